/// Affine coordinates `(tr X, tr(σ1 X), tr(σ2 X), tr(σ3 X))` of a 2x2 Hermitian operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAffineVector {
    pub trace_part: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

impl BlochAffineVector {
    pub fn new(trace_part: f64, b1: f64, b2: f64, b3: f64) -> Self {
        Self { trace_part, b1, b2, b3 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.trace_part, self.b1, self.b2, self.b3]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A linear map on affine coordinates, stored as a real 4x4 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineSuperoperator {
    pub matrix: [[f64; 4]; 4],
}

impl AffineSuperoperator {
    pub fn new(matrix: [[f64; 4]; 4]) -> Self {
        Self { matrix }
    }

    pub fn identity() -> Self {
        let mut matrix = [[0.0; 4]; 4];
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self { matrix }
    }

    pub fn apply(&self, v: &BlochAffineVector) -> BlochAffineVector {
        let x = v.to_array();
        let mut out = [0.0; 4];
        for (o, row) in out.iter_mut().zip(&self.matrix) {
            *o = row.iter().zip(&x).map(|(a, b)| a * b).sum();
        }
        BlochAffineVector::from_array(out)
    }

    /// Matrix product `self · other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut matrix = [[0.0; 4]; 4];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum();
            }
        }
        Self { matrix }
    }

    /// Trace preservation is equivalent to a first row of `(1, 0, 0, 0)`.
    pub fn is_trace_preserving(&self, tol: f64) -> bool {
        let first = self.matrix[0];
        (first[0] - 1.0).abs() <= tol && first[1..].iter().all(|x| x.abs() <= tol)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.matrix
            .iter()
            .flatten()
            .zip(other.matrix.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
