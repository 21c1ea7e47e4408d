//! Grids of `m_q(n,k)` / `M_q(n,k)` and their TSV and JSON forms.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{searched_value, window_value, Mode, SearchConfig, TableEntry};
use crate::alpha::AlphaTable;
use crate::error::{Error, Result};
use crate::geometry::num_points;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entry: Option<TableEntry>,
    /// Set instead of `entry` when a guard stopped the computation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub q: u32,
    pub mode: Mode,
    pub n_max: usize,
    pub k_max: usize,
    pub cells: Vec<TableCell>,
}

/// `m_q(n,k)` (or `M_q(n,k)`) for `1 <= k <= k_max`, `k <= n <= min(n_max, [k;1]_q)`.
///
/// In min mode, lengths covered by a certified α window take the window
/// value; everything else is searched. Guard failures are recorded per cell.
pub fn m_table(q: u32, n_max: usize, k_max: usize, mode: Mode, cfg: &SearchConfig) -> Result<Table> {
    crate::gf::FieldSpec::new(q)?;
    cfg.install(|| {
        let mut memo = HashMap::new();
        let mut cells = Vec::new();
        for k in 1..=k_max {
            let total = num_points(q, k).min(n_max as u64) as usize;
            let mut alphas = if mode == Mode::Min && k >= 2 {
                Some(AlphaTable::for_params(q, k, cfg.alpha_guard)?)
            } else {
                None
            };
            for n in k..=total {
                let window = match alphas.as_mut() {
                    Some(t) => window_value(t, n)?,
                    None => None,
                };
                let result = match window {
                    Some(e) => {
                        memo.insert((k, n), e.clone());
                        Ok(e)
                    }
                    None => searched_value(q, k, n, mode, cfg, &mut memo),
                };
                let cell = match result {
                    Ok(e) => TableCell { n, k, entry: Some(e), error: None },
                    Err(e @ (Error::GuardExceeded(_) | Error::TooLarge(_))) => {
                        TableCell { n, k, entry: None, error: Some(format!("{}: {e}", e.kind())) }
                    }
                    Err(e) => return Err(e),
                };
                cells.push(cell);
            }
        }
        Ok(Table { q, mode, n_max, k_max, cells })
    })?
}

impl Table {
    pub fn get(&self, n: usize, k: usize) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.n == n && c.k == k)
    }

    /// Rows `n`, columns `k`; `-` outside `k <= n <= [k;1]_q`, `guard` where a guard tripped.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n");
        for k in 1..=self.k_max {
            write!(out, "\tk={k}").unwrap();
        }
        out.push('\n');
        for n in 1..=self.n_max {
            write!(out, "{n}").unwrap();
            for k in 1..=self.k_max {
                let cell = match self.get(n, k) {
                    Some(TableCell { entry: Some(e), .. }) => e.value.to_string(),
                    Some(_) => "guard".to_string(),
                    None => "-".to_string(),
                };
                write!(out, "\t{cell}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Table> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Method;

    #[test]
    fn small_binary_table() {
        let t = m_table(2, 7, 3, Mode::Min, &SearchConfig::default()).unwrap();
        let col3: Vec<usize> = (3..=7).map(|n| t.get(n, 3).unwrap().entry.as_ref().unwrap().value).collect();
        assert_eq!(col3, vec![3, 4, 6, 7, 7]);
        assert_eq!(t.get(3, 2).unwrap().entry.as_ref().unwrap().value, 3);
        assert_eq!(t.get(6, 3).unwrap().entry.as_ref().unwrap().method, Method::Prop2Window);
        assert!(t.get(4, 2).is_none());
        for c in &t.cells {
            let e = c.entry.as_ref().unwrap();
            assert_eq!(e.verify().unwrap(), e.value);
        }
        let tsv = t.to_tsv();
        assert!(tsv.starts_with("n\tk=1\tk=2\tk=3\n1\t1\t-\t-\n"));
        assert!(tsv.ends_with("7\t-\t-\t7\n"));
        let json = t.to_json();
        assert_eq!(Table::from_json(&json).unwrap().to_json(), json);
    }

    #[test]
    fn guard_markers() {
        let cfg = SearchConfig { subset_limit: 100, canon_max_points: 10, ..SearchConfig::default() };
        let t = m_table(2, 8, 4, Mode::Min, &cfg).unwrap();
        let cell = t.get(7, 4).unwrap();
        assert!(cell.entry.is_none());
        assert!(cell.error.as_deref().unwrap().starts_with("guard-exceeded"));
        assert!(t.to_tsv().contains("guard"));
    }
}
