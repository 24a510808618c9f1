use std::ops::RangeInclusive;

use feec_weights::Triangle;

/// Degrees given as `A..B`, `A..=B`, `A-B` or a single `A`; both ends inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRange(pub RangeInclusive<u32>);

impl DegreeRange {
    pub fn iter(&self) -> RangeInclusive<u32> {
        self.0.clone()
    }

    pub fn single(&self) -> Option<u32> {
        (self.0.start() == self.0.end()).then_some(*self.0.start())
    }
}

pub fn parse_range(s: &str) -> Result<DegreeRange, String> {
    let s = s.trim();
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("not a degree: {t:?}"));
    let (a, b) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let a = num(s)?;
        (a, a)
    };
    if a > b {
        return Err(format!("empty degree range {s:?}"));
    }
    Ok(DegreeRange(a..=b))
}

pub fn parse_triangle(s: &str) -> Result<Triangle, String> {
    Triangle::parse(s).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..6").unwrap().0, 2..=6);
        assert_eq!(parse_range("2..=6").unwrap().0, 2..=6);
        assert_eq!(parse_range("3-5").unwrap().0, 3..=5);
        assert_eq!(parse_range(" 4 ").unwrap().single(), Some(4));
        assert!(parse_range("6..2").is_err());
        assert!(parse_range("two").is_err());
        assert!(parse_range("-3").is_err());
    }
}
