use crate::dataset::Dataset;

/// Dense row-major design matrix with labels as class indices.
#[derive(Debug, Clone)]
pub struct Matrix {
    pub data: Vec<f64>,
    pub cols: usize,
}

impl Matrix {
    pub fn new(cols: usize) -> Self {
        Matrix { data: Vec::new(), cols }
    }

    pub fn from_rows<'a>(cols: usize, rows: impl IntoIterator<Item = &'a [f64]>) -> Self {
        let mut m = Matrix::new(cols);
        for r in rows {
            m.push(r);
        }
        m
    }

    pub fn push(&mut self, row: &[f64]) {
        debug_assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
    }

    pub fn rows(&self) -> usize {
        if self.cols == 0 {
            0
        } else {
            self.data.len() / self.cols
        }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn select(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(self.cols, idx.iter().map(|&i| self.row(i)))
    }
}

pub fn dataset_xy(ds: &Dataset) -> (Matrix, Vec<u8>) {
    let x = Matrix::from_rows(ds.schema.len(), ds.rows.iter().map(|r| r.features.as_slice()));
    let y = ds.rows.iter().map(|r| r.label.index() as u8).collect();
    (x, y)
}

/// Most frequent class; ties go to the lowest index.
pub fn majority(counts: &[usize; 6]) -> u8 {
    let mut best = 0;
    for c in 1..6 {
        if counts[c] > counts[best] {
            best = c;
        }
    }
    best as u8
}
