use crate::error::{Error, Result};

/// A total binary operation `rows × cols → target`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    rows: usize,
    cols: usize,
    cells: Vec<usize>,
}

impl OpTable {
    /// Validate shape and range of a nested table.
    pub fn new(name: &str, rows: usize, cols: usize, target: usize, data: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |detail: String| Error::BadTable {
            table: name.to_string(),
            detail,
        };
        if data.len() != rows {
            return Err(bad(format!("expected {rows} rows, found {}", data.len())));
        }
        let mut cells = Vec::with_capacity(rows * cols);
        for (r, row) in data.into_iter().enumerate() {
            if row.len() != cols {
                return Err(bad(format!("row {r} has {} entries, expected {cols}", row.len())));
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= target) {
                return Err(bad(format!("entry ({r}, {c}) = {v} is out of range (size {target})")));
            }
            cells.extend(row);
        }
        Ok(OpTable { rows, cols, cells })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let cells = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        OpTable { rows, cols, cells }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.cols + b]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.cells[a * self.cols..(a + 1) * self.cols]
    }

    pub fn to_nested(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// `(a, b) ↦ self(b, a)`
    pub fn transposed(&self) -> Self {
        OpTable::from_fn(self.cols, self.rows, |a, b| self.get(b, a))
    }
}

impl std::fmt::Debug for OpTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

/// Render a square table with row and column headers.
pub fn render_table(symbol: &str, labels: &[String], table: &OpTable) -> String {
    let width = labels.iter().map(String::len).max().unwrap_or(1).max(symbol.len());
    let mut out = format!("{symbol:>width$} |");
    for l in labels {
        out.push_str(&format!(" {l:>width$}"));
    }
    out.push('\n');
    out.push_str(&"-".repeat(width + 2 + (width + 1) * labels.len()));
    out.push('\n');
    for (r, l) in labels.iter().enumerate() {
        out.push_str(&format!("{l:>width$} |"));
        for &v in table.row(r) {
            out.push_str(&format!(" {:>width$}", labels[v]));
        }
        out.push('\n');
    }
    out
}
