//! Text format: the first data line is `n`, each further data line is three
//! point labels. `#` starts a comment; blank lines are skipped.

use std::fmt::Write as _;

use super::{BlockSet, DesignError, PartialTripleSystem};

pub fn read_blocks(text: &str) -> Result<BlockSet, DesignError> {
    let mut n = None;
    let mut blocks = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| DesignError::Parse { line: idx + 1, message };
        let fields: Vec<usize> = line
            .split_whitespace()
            .map(|f| f.parse::<usize>().map_err(|e| parse_err(format!("`{f}`: {e}"))))
            .collect::<Result<_, _>>()?;
        match n {
            None => {
                let [count] = fields[..] else {
                    return Err(parse_err("expected the point count alone".into()));
                };
                n = Some(count);
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(parse_err(format!("expected 3 points, found {}", fields.len())));
                }
                blocks.push(fields);
            }
        }
    }
    let n = n.ok_or(DesignError::Parse { line: 0, message: "missing point count".into() })?;
    Ok(BlockSet::new(n, blocks))
}

/// Canonical form: sorted blocks, points ascending.
pub fn write_blocks(system: &PartialTripleSystem) -> String {
    let mut out = format!("{}\n", system.n());
    for [a, b, c] in system.blocks() {
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::construct_ag;
    use super::*;

    #[test]
    fn round_trip_is_canonical() {
        let text = "# plane\n9\n3 2 1 # first\n\n4 5 6\n7 8 9\n1 4 7\n2 5 8\n3 6 9\n1 5 9\n2 6 7\n3 4 8\n1 6 8\n2 4 9\n3 5 7\n";
        let raw = read_blocks(text).unwrap();
        let p = PartialTripleSystem::new(&raw).unwrap();
        let canonical = write_blocks(&p);
        assert_eq!(canonical, write_blocks(construct_ag(2).unwrap().base()));
        let again = write_blocks(&PartialTripleSystem::new(&read_blocks(&canonical).unwrap()).unwrap());
        assert_eq!(again, canonical);
    }

    #[test]
    fn parse_errors_carry_line() {
        assert!(matches!(read_blocks("3\n1 2\n"), Err(DesignError::Parse { line: 2, .. })));
        assert!(matches!(read_blocks("3\n1 x 2\n"), Err(DesignError::Parse { line: 2, .. })));
        assert!(matches!(read_blocks("# nothing\n"), Err(DesignError::Parse { .. })));
        assert!(matches!(read_blocks("3 4\n"), Err(DesignError::Parse { line: 1, .. })));
    }
}
