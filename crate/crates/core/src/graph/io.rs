//! graph6 and plain edge-list text formats.

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Encode as graph6: size prefix, then the upper triangle column by column
/// packed six bits per printable byte (offset 63), big-endian within a byte.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decode one graph6 line. An optional `>>graph6<<` header is accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&bad) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {bad:#x} is not a graph6 character")));
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Parse("unsupported graph6 size prefix".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n == 0 || n > MAX_ORDER {
        return Err(Error::InvalidOrder(n));
    }
    let bits = n * (n - 1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(Error::Parse(format!(
            "graph6 body for order {n} needs {need} bytes, got {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            idx += 1;
        }
    }
    let pad = need * 6 - bits;
    if pad > 0 && (body[need - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(Error::Parse("nonzero graph6 padding bits".into()));
    }
    Ok(g)
}

/// `p <order> <edges>` followed by one `u v` line per edge, 0-indexed.
pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("p {} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parse the edge-list format. Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("missing 'p' header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "p" {
        return Err(Error::Parse(format!("bad header line {header:?}")));
    }
    let order = parse_num(fields[1])?;
    let declared = parse_num(fields[2])?;
    let mut g = Graph::empty(order)?;
    let mut seen = 0;
    for line in lines {
        let pair: Vec<&str> = line.split_whitespace().collect();
        if pair.len() != 2 {
            return Err(Error::Parse(format!("bad edge line {line:?}")));
        }
        let (u, v) = (parse_num(pair[0])?, parse_num(pair[1])?);
        if g.has_edge(u, v) {
            return Err(Error::Parse(format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v)?;
        seen += 1;
    }
    if seen != declared {
        return Err(Error::Parse(format!("header declares {declared} edges, found {seen}")));
    }
    Ok(g)
}

fn parse_num(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("not a number: {s:?}")))
}
