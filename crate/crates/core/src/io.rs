//! Instance file formats: whitespace-separated edge lists (`i j` per line,
//! 0-indexed) for graphs and header-less CSV for real matrices.

use std::io::{BufRead, Read, Write};

use crate::error::{Error, Result};
use crate::model::{Graph, RealMatrix};

pub fn write_edge_list(g: &Graph, mut out: impl Write) -> Result<()> {
    for (i, j) in g.edges() {
        writeln!(out, "{i} {j}")?;
    }
    Ok(())
}

/// Reads an edge list on `n` nodes. Blank lines and lines starting with `#`
/// are ignored; duplicate edges are accepted.
pub fn read_edge_list(n: usize, input: impl BufRead) -> Result<Graph> {
    let mut edges = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<usize> {
            parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: expected two node indices", lineno + 1)))?
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
        };
        let (i, j) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(Error::Parse(format!("line {}: trailing tokens", lineno + 1)));
        }
        edges.push((i, j));
    }
    Graph::from_edges(n, &edges)
}

pub fn write_matrix_csv(m: &RealMatrix, out: impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    for i in 0..m.rows() {
        w.write_record(m.row(i).iter().map(|v| format!("{v:?}")))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_matrix_csv(input: impl Read) -> Result<RealMatrix> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(input);
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    RealMatrix::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::from_edges(5, &[(0, 3), (1, 2), (2, 4)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0 3\n1 2\n2 4\n");
        assert_eq!(read_edge_list(5, buf.as_slice()).unwrap(), g);
        assert!(read_edge_list(3, "0 5\n".as_bytes()).is_err());
        assert!(read_edge_list(3, "0 x\n".as_bytes()).is_err());
    }

    #[test]
    fn matrix_csv_round_trip_is_exact() {
        let m = RealMatrix::from_rows(&[vec![0.1, -2.5e-7], vec![1.0 / 3.0, 4.0]]).unwrap();
        let mut buf = Vec::new();
        write_matrix_csv(&m, &mut buf).unwrap();
        assert_eq!(read_matrix_csv(buf.as_slice()).unwrap(), m);
        assert!(read_matrix_csv("1,2\n3\n".as_bytes()).is_err());
    }
}
