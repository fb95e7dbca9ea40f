//! Plain-text group generator files.
//!
//! ```text
//! degree <n>
//! gen <n space-separated 0-based images>
//! ```
//!
//! Blank lines and `#` comments are ignored. The format is bit-exact: the
//! writer always emits the same bytes for the same generators.

use super::{PermError, Permutation};

pub fn parse_group_file(text: &str) -> Result<(usize, Vec<Permutation>), PermError> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        match it.next() {
            Some("degree") => {
                let n: usize = it
                    .next()
                    .ok_or_else(|| PermError::Parse(format!("line {}: missing degree", lineno + 1)))?
                    .parse()
                    .map_err(|_| PermError::Parse(format!("line {}: bad degree", lineno + 1)))?;
                if it.next().is_some() {
                    return Err(PermError::Parse(format!("line {}: trailing tokens", lineno + 1)));
                }
                degree = Some(n);
            }
            Some("gen") => {
                let n = degree.ok_or_else(|| {
                    PermError::Parse(format!("line {}: gen before degree", lineno + 1))
                })?;
                let images: Result<Vec<u16>, _> = it.map(|t| t.parse::<u16>()).collect();
                let images = images
                    .map_err(|_| PermError::Parse(format!("line {}: bad image", lineno + 1)))?;
                if images.len() != n {
                    return Err(PermError::Parse(format!(
                        "line {}: expected {} images, got {}",
                        lineno + 1,
                        n,
                        images.len()
                    )));
                }
                gens.push(Permutation::from_images(images)?);
            }
            Some(tok) => {
                return Err(PermError::Parse(format!(
                    "line {}: unknown directive '{}'",
                    lineno + 1,
                    tok
                )))
            }
            None => unreachable!(),
        }
    }
    let degree = degree.ok_or_else(|| PermError::Parse("missing degree line".into()))?;
    Ok((degree, gens))
}

pub fn write_group_file(degree: usize, gens: &[Permutation]) -> String {
    let mut out = String::new();
    out.push_str(&format!("degree {}\n", degree));
    for g in gens {
        out.push_str("gen");
        for &x in g.images() {
            out.push_str(&format!(" {}", x));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let gens = vec![
            Permutation::from_images(vec![1, 2, 0]).unwrap(),
            Permutation::from_images(vec![0, 2, 1]).unwrap(),
        ];
        let text = write_group_file(3, &gens);
        let (d, parsed) = parse_group_file(&text).unwrap();
        assert_eq!(d, 3);
        assert_eq!(parsed, gens);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# cyclic group\n\ndegree 3\n# generator\ngen 1 2 0\n";
        let (d, parsed) = parse_group_file(text).unwrap();
        assert_eq!(d, 3);
        assert_eq!(parsed.len(), 1);
    }

    #[test]
    fn errors() {
        assert!(parse_group_file("gen 0 1").is_err());
        assert!(parse_group_file("degree 3\ngen 0 1").is_err());
        assert!(parse_group_file("degree 3\ngen 0 1 1").is_err());
    }
}
