//! Command-line lists: `2,4,8`, `2..6` (inclusive) and rational lists.

use anyhow::{bail, Context, Result};
use augment_core::rational::parse;
use augment_core::Rational;

/// Parses a comma-separated list of integers and inclusive ranges `a..b`.
/// The empty string is the empty list; order and duplicates are kept.
pub fn parse_k_list(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: usize = lo.trim().parse().with_context(|| format!("bad k range `{item}`"))?;
            let hi: usize = hi
                .trim()
                .trim_start_matches('=')
                .parse()
                .with_context(|| format!("bad k range `{item}`"))?;
            if lo > hi {
                bail!("empty k range `{item}`");
            }
            out.extend(lo..=hi);
        } else {
            out.push(item.parse().with_context(|| format!("bad k value `{item}`"))?);
        }
    }
    Ok(out)
}

pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(s).map_err(Into::into))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use augment_core::rational::ratio;

    #[test]
    fn k_lists() {
        assert_eq!(parse_k_list("2,4,8").unwrap(), vec![2, 4, 8]);
        assert_eq!(parse_k_list("2..4, 7").unwrap(), vec![2, 3, 4, 7]);
        assert_eq!(parse_k_list("2..=3").unwrap(), vec![2, 3]);
        assert!(parse_k_list("").unwrap().is_empty());
        assert!(parse_k_list("5..2").is_err());
        assert!(parse_k_list("x").is_err());
    }

    #[test]
    fn rational_lists() {
        assert_eq!(
            parse_rational_list("1, 1/2,0.25").unwrap(),
            vec![ratio(1, 1), ratio(1, 2), ratio(1, 4)]
        );
        assert!(parse_rational_list("1/0").is_err());
    }
}
