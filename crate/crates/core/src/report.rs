//! Tabular sweep results shared by the verification drivers.

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Float(x) => Some(x),
            Cell::Int(n) => Some(n as f64),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Named columns, rows in a fixed order, and ordered metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Vec<(String, Cell)>,
}

impl SweepReport {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_owned(),
            columns: columns.iter().map(|c| (*c).to_owned()).collect(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    /// Sets a metadata entry, keeping first-insertion order.
    pub fn set_meta(&mut self, key: &str, value: impl Into<Cell>) {
        let value = value.into();
        match self.metadata.iter_mut().find(|(k, _)| k == key) {
            Some(entry) => entry.1 = value,
            None => self.metadata.push((key.to_owned(), value)),
        }
    }

    pub fn meta(&self, key: &str) -> Option<&Cell> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of a column, skipping empty cells.
    pub fn float_column(&self, name: &str) -> Vec<f64> {
        let Some(i) = self.column_index(name) else {
            return Vec::new();
        };
        self.rows.iter().filter_map(|r| r[i].as_f64()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_and_metadata() {
        let mut r = SweepReport::new("t", &["a", "b"]);
        r.push(vec![Cell::Int(1), Cell::Float(0.5)]);
        r.push(vec![Cell::Int(2), Cell::Empty]);
        assert_eq!(r.float_column("a"), vec![1.0, 2.0]);
        assert_eq!(r.float_column("b"), vec![0.5]);
        assert!(r.float_column("c").is_empty());
        r.set_meta("x", 1.0);
        r.set_meta("y", "z");
        r.set_meta("x", 2.0);
        assert_eq!(r.metadata[0], ("x".to_owned(), Cell::Float(2.0)));
        assert_eq!(r.meta("y"), Some(&Cell::Text("z".into())));
    }

    #[test]
    #[should_panic]
    fn rejects_ragged_rows() {
        SweepReport::new("t", &["a"]).push(vec![]);
    }
}
