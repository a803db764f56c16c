//! Parsing of range flags: `a..b` (inclusive), comma lists, or a mix.

/// A parsed range flag, kept as one value so clap does not split it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct List(pub Vec<usize>);

pub fn parse_list(s: &str) -> Result<List, String> {
    expand(s).map(List)
}

fn expand(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim) {
        if part.is_empty() {
            return Err(format!("empty item in '{s}'"));
        }
        match part.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| format!("bad range start in '{part}'"))?;
                let b = b.trim().trim_start_matches('=');
                let b: usize = b.parse().map_err(|_| format!("bad range end in '{part}'"))?;
                if a > b {
                    return Err(format!("empty range '{part}'"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| format!("not a natural number: '{part}'"))?),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(expand("1..3"), Ok(vec![1, 2, 3]));
        assert_eq!(expand("1,3"), Ok(vec![1, 3]));
        assert_eq!(expand("0..1, 5"), Ok(vec![0, 1, 5]));
        assert_eq!(expand("2..=4"), Ok(vec![2, 3, 4]));
        assert_eq!(expand("7"), Ok(vec![7]));
    }

    #[test]
    fn rejects() {
        assert!(expand("3..1").is_err());
        assert!(expand("a").is_err());
        assert!(expand("1,,2").is_err());
        assert!(expand("-1").is_err());
    }
}
