//! CSV assembly for solve/evaluate runs.
//!
//! The column set is fixed:
//! `graph,n,m,algorithm,seed,cover_size,opt_status,lower_bound,ratio,`
//! `ratio_is_bound,relative_error,greedy_count,exact_cover_count,time_ms`.
//! Metadata (config hash, command line, seed list) and per-row failures
//! travel as `#` comment lines so the data schema never changes.

use std::io::{self, Write};

use sha2::{Digest, Sha256};

pub const SOLVE_HEADER: &str = "graph,n,m,algorithm,seed,cover_size,opt_status,lower_bound,\
                                ratio,ratio_is_bound,relative_error,greedy_count,\
                                exact_cover_count,time_ms";

#[derive(Debug, Clone, Default)]
pub struct Row {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub cover_size: Option<usize>,
    pub opt_status: Option<&'static str>,
    pub lower_bound: Option<usize>,
    pub ratio: Option<f64>,
    pub ratio_is_bound: Option<bool>,
    pub relative_error: Option<f64>,
    pub greedy_count: Option<usize>,
    pub exact_cover_count: Option<usize>,
    pub time_ms: f64,
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

impl Row {
    pub fn sort_key(&self) -> (String, String, Option<u64>) {
        (self.graph.clone(), self.algorithm.clone(), self.seed)
    }

    fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
            self.graph,
            self.n,
            self.m,
            self.algorithm,
            opt(&self.seed),
            opt(&self.cover_size),
            self.opt_status.unwrap_or(""),
            opt(&self.lower_bound),
            self.ratio.map(|r| format!("{r:.6}")).unwrap_or_default(),
            opt(&self.ratio_is_bound),
            self.relative_error
                .map(|r| format!("{r:.6}"))
                .unwrap_or_default(),
            opt(&self.greedy_count),
            opt(&self.exact_cover_count),
            self.time_ms,
        )
    }
}

/// A job failure, reported in-file as a comment so the run can continue.
#[derive(Debug, Clone)]
pub struct RowError {
    pub graph: String,
    pub algorithm: String,
    pub seed: Option<u64>,
    pub message: String,
}

/// Short hex digest of the resolved run configuration.
pub fn config_hash(description: &str) -> String {
    let digest = Sha256::digest(description.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn write_solve_csv<W: Write>(
    mut w: W,
    description: &str,
    rows: &mut [Row],
    errors: &[RowError],
) -> io::Result<()> {
    writeln!(w, "# config_hash {}", config_hash(description))?;
    writeln!(w, "# config {description}")?;
    rows.sort_by_key(|r| r.sort_key());
    writeln!(w, "{SOLVE_HEADER}")?;
    for row in rows.iter() {
        writeln!(w, "{}", row.to_csv())?;
    }
    for e in errors {
        writeln!(
            w,
            "# error graph={} algorithm={} seed={}: {}",
            e.graph,
            e.algorithm,
            e.seed.map(|s| s.to_string()).unwrap_or_default(),
            e.message
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_row_formats_blanks() {
        let row = Row {
            graph: "g".into(),
            n: 3,
            m: 2,
            algorithm: "standard".into(),
            time_ms: 1.5,
            ..Row::default()
        };
        assert_eq!(row.to_csv(), "g,3,2,standard,,,,,,,,,,1.500");
    }

    #[test]
    fn csv_header_matches_contract() {
        assert_eq!(
            SOLVE_HEADER,
            "graph,n,m,algorithm,seed,cover_size,opt_status,lower_bound,ratio,ratio_is_bound,\
             relative_error,greedy_count,exact_cover_count,time_ms"
        );
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(config_hash("x"), config_hash("x"));
        assert_ne!(config_hash("x"), config_hash("y"));
        assert_eq!(config_hash("x").len(), 16);
    }
}
