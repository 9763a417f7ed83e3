//! Plain-text set files.
//!
//! ```text
//! # comment
//! group p=5 n=2
//! 1,3
//! 0,4
//! ```

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::set::DenseSet;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split(' ')
        .scan(0usize, |pos, tok| {
            let start = *pos;
            *pos += tok.len() + 1;
            Some((start, tok))
        })
        .filter(|(_, tok)| !tok.is_empty())
}

fn parse_header(line_no: usize, line: &str) -> Result<GroupSpec> {
    let mut p = None;
    let mut n = None;
    for (offset, tok) in tokens(line).skip(1) {
        let column = offset + 1;
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, column, format!("expected key=value, got `{tok}`")))?;
        let value: u32 = value
            .parse()
            .map_err(|_| parse_err(line_no, column + key.len() + 1, format!("`{value}` is not an integer")))?;
        match key {
            "p" => p = Some(value),
            "n" => n = Some(value),
            _ => return Err(parse_err(line_no, column, format!("unknown header key `{key}`"))),
        }
    }
    let p = p.ok_or_else(|| parse_err(line_no, 1, "header is missing p"))?;
    let n = n.ok_or_else(|| parse_err(line_no, 1, "header is missing n"))?;
    GroupSpec::new(p, n).map_err(|e| parse_err(line_no, 1, e.to_string()))
}

/// Parses a set file. When `expected` is given the header must match it.
pub fn parse_set(text: &str, expected: Option<GroupSpec>) -> Result<DenseSet> {
    let mut group: Option<GroupSpec> = None;
    let mut set: Option<DenseSet> = None;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - raw.trim_start().len();
        if trimmed.starts_with("group") {
            if group.is_some() {
                return Err(parse_err(line_no, indent + 1, "duplicate group header"));
            }
            let g = parse_header(line_no, trimmed)?;
            if let Some(exp) = expected {
                if exp != g {
                    return Err(parse_err(line_no, indent + 1, format!("group header {g} does not match {exp}")));
                }
            }
            group = Some(g);
            set = Some(DenseSet::empty(g));
            continue;
        }
        let (Some(g), Some(s)) = (group, set.as_mut()) else {
            return Err(parse_err(line_no, indent + 1, "element before group header"));
        };
        let mut coords = Vec::with_capacity(g.rank());
        let mut column = indent + 1;
        for field in trimmed.split(',') {
            let lead = field.len() - field.trim_start().len();
            let value: u32 = field
                .trim()
                .parse()
                .map_err(|_| parse_err(line_no, column + lead, format!("`{}` is not a coordinate", field.trim())))?;
            if value >= g.p() {
                return Err(parse_err(line_no, column + lead, format!("coordinate {value} is not below p = {}", g.p())));
            }
            coords.push(value);
            column += field.len() + 1;
        }
        if coords.len() != g.rank() {
            return Err(parse_err(
                line_no,
                indent + 1,
                format!("expected {} coordinates, found {}", g.rank(), coords.len()),
            ));
        }
        s.insert(g.encode(&coords)?);
    }
    set.ok_or_else(|| parse_err(1, 1, "missing group header"))
}

/// Writes the header and one element per line in ascending index order.
pub fn write_set(set: &DenseSet) -> String {
    let g = set.group();
    let mut out = format!("group p={} n={}\n", g.p(), g.n());
    for c in set.to_coords() {
        let parts: Vec<String> = c.iter().map(u32::to_string).collect();
        out.push_str(&parts.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_example_file() {
        let text = "# two elements\ngroup p=5 n=2\n1,3\n 0,4 \n\n# done\n";
        let s = parse_set(text, None).unwrap();
        let g = GroupSpec::new(5, 2).unwrap();
        assert_eq!(s, DenseSet::from_coords(g, [[1, 3], [0, 4]]).unwrap());
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_set("group p=5 n=2\n1,3\n2,x\n", None).unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, column: 3, message: "`x` is not a coordinate".into() });
        let err = parse_set("group p=5 n=2\n1,7\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }));
        let err = parse_set("1,2\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
        let err = parse_set("group p=5 n=2\n1,2,3\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_set("group p=6 n=2\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(parse_set("# nothing\n", None).is_err());
    }

    #[test]
    fn header_mismatch_is_rejected() {
        let g = GroupSpec::new(5, 1).unwrap();
        let err = parse_set("group p=5 n=2\n", Some(g)).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    proptest! {
        #[test]
        fn write_then_parse_is_identity(bits in proptest::collection::vec(any::<bool>(), 25)) {
            let g = GroupSpec::new(5, 2).unwrap();
            let s = DenseSet::from_indices(g, (0..25).filter(|&i| bits[i])).unwrap();
            prop_assert_eq!(parse_set(&write_set(&s), Some(g)).unwrap(), s);
        }
    }
}
