//! Record rendering and the embedded golden result table.
//!
//! A [`ResultRecord`] is one output row: the spoof tuple, its classification
//! flags, the factored form of x, and both sides of the Robin bound. Records
//! render identically field-for-field across csv, json, and aligned-table
//! formats; csv and json layouts are stable interfaces.

use serde::{Deserialize, Serialize};

use crate::arithmetic::factorize;
use crate::robin::robin_check;
use crate::search::SearchConfig;
use crate::spoof::SpoofNumber;

/// Exact csv column order; json objects use the same keys.
pub const CSV_HEADER: &str = "s,n,x,k,alpha,x_is_prime,x_coprime_n,s_odd,x_factorization,robin_lhs,robin_rhs";

/// The 14 published (s, n, x, k, α) result rows, verbatim, including the
/// three previously known entries (77805, 92781, 8999757).
pub const GOLDEN_TABLE: [(u64, u64, u64, u64, u32); 14] = [
    (15, 5, 3, 16, 3),
    (33, 11, 3, 44, 4),
    (1911, 637, 3, 152, 5),
    (1989, 153, 13, 280, 3),
    (34485, 11495, 3, 56, 4),
    (36309, 12103, 3, 160, 5),
    (77805, 11115, 7, 16, 2),
    (92781, 1521, 61, 97, 2),
    (105435, 21087, 5, 256, 4),
    (181545, 60515, 3, 192, 5),
    (241395, 80465, 3, 64, 4),
    (8999757, 147537, 61, 98, 2),
    (62998299, 1032759, 61, 112, 2),
    (440988093, 7229313, 61, 114, 2),
];

/// Golden rows whose n falls inside `[.., n_max]` — the comparison target
/// for restricted runs.
pub fn golden_subset(n_max: u64) -> Vec<(u64, u64, u64, u64, u32)> {
    GOLDEN_TABLE.iter().copied().filter(|r| r.1 <= n_max).collect()
}

/// Effective k bound of the published search. The publication never states
/// its k limit; its largest reported k is 280, and exhaustive search over
/// n ≤ 1.6e7 shows further genuine spoofs (x prime, coprime, s odd) appear
/// from k = 320 on (s = 13923 first), so any bound in [280, 319] reproduces
/// the 14 published rows exactly.
pub const REPRODUCTION_K_MAX: u64 = 280;

/// The search configuration whose results the golden table describes.
/// `fast` restricts to n ≤ 10⁵, covered by the first 11 golden rows.
pub fn reproduction_config(fast: bool) -> SearchConfig {
    SearchConfig {
        n_max: if fast { 100_000 } else { 16_000_000 },
        k_max: REPRODUCTION_K_MAX,
        ..SearchConfig::default()
    }
}

/// One rendered output row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub s: u64,
    pub n: u64,
    pub x: u64,
    pub k: u64,
    pub alpha: u32,
    pub x_is_prime: bool,
    pub x_coprime_n: bool,
    pub s_odd: bool,
    pub x_factorization: String,
    pub robin_lhs: String,
    pub robin_rhs: String,
}

/// Render a float to 6 significant digits in plain decimal.
pub fn format_significant(value: f64) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let order = value.abs().log10().floor() as i32;
    let decimals = (5 - order).max(0) as usize;
    format!("{value:.decimals$}")
}

/// "19^2*61"-style rendering of a factorization.
pub fn format_factorization(m: u64) -> String {
    factorize(m)
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl ResultRecord {
    pub fn from_spoof(h: &SpoofNumber) -> ResultRecord {
        let robin = robin_check(h);
        let (robin_lhs, robin_rhs) = if robin.applicable {
            (
                format_significant(robin.lhs),
                format_significant(robin.rhs),
            )
        } else {
            ("n/a".to_string(), "n/a".to_string())
        };
        ResultRecord {
            s: h.s,
            n: h.n,
            x: h.x,
            k: h.k,
            alpha: h.alpha,
            x_is_prime: h.x_is_prime,
            x_coprime_n: h.x_coprime_n,
            s_odd: h.s_odd,
            x_factorization: format_factorization(h.x),
            robin_lhs,
            robin_rhs,
        }
    }

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.s,
            self.n,
            self.x,
            self.k,
            self.alpha,
            self.x_is_prime,
            self.x_coprime_n,
            self.s_odd,
            self.x_factorization,
            self.robin_lhs,
            self.robin_rhs
        )
    }
}

/// Output format for record streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Table,
}

/// Render a full record set in the chosen format, LF line endings.
pub fn render_records(records: &[ResultRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in records {
                out.push_str(&r.to_csv_line());
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(records).expect("records serialize");
            out.push('\n');
            out
        }
        OutputFormat::Table => {
            let header: Vec<String> = CSV_HEADER.split(',').map(str::to_string).collect();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| r.to_csv_line().split(',').map(str::to_string).collect())
                .collect();
            let widths: Vec<usize> = header
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    rows.iter()
                        .map(|row| row[i].len())
                        .chain([h.len()])
                        .max()
                        .unwrap()
                })
                .collect();
            let mut out = String::new();
            let fmt_row = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            out.push_str(&fmt_row(&header));
            out.push('\n');
            for row in &rows {
                out.push_str(&fmt_row(row));
                out.push('\n');
            }
            out
        }
    }
}

/// Outcome of diffing search results against a golden row set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableDiff {
    pub matched: usize,
    pub expected: usize,
    /// Golden rows absent from the results.
    pub missing: Vec<(u64, u64, u64, u64, u32)>,
    /// Result rows absent from the golden set.
    pub extra: Vec<(u64, u64, u64, u64, u32)>,
}

impl TableDiff {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.matched == self.expected
    }
}

/// Compare found tuples against a golden row set, both as exact
/// (s, n, x, k, α) tuples.
pub fn diff_against_golden(
    results: &[SpoofNumber],
    golden: &[(u64, u64, u64, u64, u32)],
) -> TableDiff {
    let found: Vec<(u64, u64, u64, u64, u32)> =
        results.iter().map(|h| (h.s, h.n, h.x, h.k, h.alpha)).collect();
    let mut diff = TableDiff {
        expected: golden.len(),
        ..TableDiff::default()
    };
    for row in golden {
        if found.contains(row) {
            diff.matched += 1;
        } else {
            diff.missing.push(*row);
        }
    }
    for row in &found {
        if !golden.contains(row) {
            diff.extra.push(*row);
        }
    }
    diff
}
