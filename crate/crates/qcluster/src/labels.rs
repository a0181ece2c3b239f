//! Node labels: plain (`7`), barred (`7̄`, ASCII alias `7b`) and primed
//! (`7′`, ASCII alias `7'`).

pub const BAR: char = '\u{0304}';
pub const PRIME: char = '\u{2032}';

pub fn plain(k: usize) -> String {
    k.to_string()
}

pub fn bar(k: usize) -> String {
    format!("{k}{BAR}")
}

pub fn prime(k: usize) -> String {
    format!("{k}{PRIME}")
}

/// Normalise ASCII spellings (`7b`, `b7`, `7bar`, `7'`, `7p`) to the canonical
/// Unicode form. Unknown shapes are returned trimmed but otherwise unchanged.
pub fn canonical(s: &str) -> String {
    let t = s.trim();
    let digits = |x: &str| !x.is_empty() && x.chars().all(|c| c.is_ascii_digit());
    if let Some(head) = t.strip_suffix("bar").or_else(|| t.strip_suffix('b')) {
        if digits(head) {
            return format!("{head}{BAR}");
        }
    }
    if let Some(tail) = t.strip_prefix('b') {
        if digits(tail) {
            return format!("{tail}{BAR}");
        }
    }
    if let Some(head) = t.strip_suffix('\'').or_else(|| t.strip_suffix('p')) {
        if digits(head) {
            return format!("{head}{PRIME}");
        }
    }
    t.to_string()
}

/// ASCII rendering of a canonical label (`7̄` → `7b`, `7′` → `7'`).
pub fn ascii(s: &str) -> String {
    s.replace(BAR, "b").replace(PRIME, "'")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases() {
        assert_eq!(canonical("7b"), bar(7));
        assert_eq!(canonical("b12"), bar(12));
        assert_eq!(canonical("3'"), prime(3));
        assert_eq!(canonical(&bar(4)), bar(4));
        assert_eq!(canonical(" 5 "), "5");
        assert_eq!(ascii(&prime(2)), "2'");
        assert_eq!(ascii(&bar(2)), "2b");
    }
}
