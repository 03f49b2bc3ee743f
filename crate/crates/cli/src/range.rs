use std::ops::RangeInclusive;
use std::str::FromStr;

/// Inclusive integer range written `a`, `a..b` or `a..=b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub start: i64,
    pub end: i64,
}

impl IntRange {
    pub fn values(&self) -> RangeInclusive<i64> {
        self.start..=self.end
    }

    /// The range as non-negative values, or an error naming the flag.
    pub fn naturals(&self, flag: &str) -> Result<Vec<usize>, String> {
        if self.start < 0 {
            return Err(format!("{flag} must be non-negative, got {}", self.start));
        }
        Ok(self.values().map(|v| v as usize).collect())
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("`{t}` is not an integer"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if start > end {
            return Err(format!("empty range `{s}`"));
        }
        Ok(IntRange { start, end })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!("3".parse(), Ok(IntRange { start: 3, end: 3 }));
        assert_eq!("2..6".parse(), Ok(IntRange { start: 2, end: 6 }));
        assert_eq!("2..=6".parse(), Ok(IntRange { start: 2, end: 6 }));
        assert_eq!("-2..1".parse::<IntRange>().unwrap().values().count(), 4);
        assert!("5..2".parse::<IntRange>().is_err());
        assert!("x".parse::<IntRange>().is_err());
        assert!("-1".parse::<IntRange>().unwrap().naturals("--degree").is_err());
    }
}
