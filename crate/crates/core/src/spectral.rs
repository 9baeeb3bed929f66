//! Adjacency spectra, quotient matrices and interlacing.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};

/// Absolute accuracy promised for every computed eigenvalue, and the slack
/// used by every downstream comparison.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Largest matrix accepted by [`eigenvalues_small_matrix`].
pub const SMALL_MATRIX_MAX: usize = 16;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("eigenvalue index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("inner spectrum has {inner} values but outer has only {outer}")]
    InnerTooLong { inner: usize, outer: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix of order {0} exceeds the small-matrix limit")]
    MatrixTooLarge(usize),
    #[error("eigenvalue {re} + {im}i is not real")]
    NonRealEigenvalue { re: f64, im: f64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Adjacency eigenvalues, sorted non-increasingly.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub tol: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `λ_k`, 1-based.
    pub fn lambda(&self, k: usize) -> Result<f64, SpectralError> {
        if k == 0 || k > self.values.len() {
            return Err(SpectralError::IndexOutOfRange { k, n: self.values.len() });
        }
        Ok(self.values[k - 1])
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values[0]
    }

    /// True if some eigenvalue lies within `tol` of `x`.
    pub fn contains_within(&self, x: f64, tol: f64) -> bool {
        self.values.iter().any(|&v| (v - x).abs() <= tol)
    }
}

/// Eigenvalues of a dense symmetric row-major matrix by cyclic Jacobi
/// rotations, sorted non-increasingly.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n, "matrix must be n x n");
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = f64::EPSILON * frob.max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q] * a[p * n + q])
            .sum::<f64>()
            .sqrt();
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
            }
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

pub fn eigenvalues(g: &Graph) -> Result<Spectrum, SpectralError> {
    let n = g.order();
    if n == 0 {
        return Err(SpectralError::EmptyGraph);
    }
    Ok(Spectrum {
        values: symmetric_eigenvalues(g.adjacency_matrix(), n),
        tol: SPECTRAL_TOL,
    })
}

pub fn lambda_k(g: &Graph, k: usize) -> Result<f64, SpectralError> {
    if k == 0 || k > g.order() {
        return Err(SpectralError::IndexOutOfRange { k, n: g.order() });
    }
    eigenvalues(g)?.lambda(k)
}

pub fn spectral_radius(g: &Graph) -> Result<f64, SpectralError> {
    Ok(eigenvalues(g)?.spectral_radius())
}

/// Disjoint non-empty blocks covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<VertexSet>,
}

impl Partition {
    pub fn new(blocks: Vec<VertexSet>, n: usize) -> Result<Self, SpectralError> {
        let mut owner = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(SpectralError::InvalidPartition(format!("block {i} is empty")));
            }
            block.validate(n)?;
            for v in block.iter() {
                if owner[v] != usize::MAX {
                    return Err(SpectralError::InvalidPartition(format!(
                        "vertex {v} appears in blocks {} and {i}",
                        owner[v]
                    )));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(SpectralError::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Partition { blocks })
    }

    /// Partition from a per-vertex block label; labels must be `0..m` with no gaps.
    pub fn from_labels(labels: &[usize]) -> Result<Self, SpectralError> {
        let m = labels.iter().max().map_or(0, |&x| x + 1);
        let mut blocks = vec![Vec::new(); m];
        for (v, &l) in labels.iter().enumerate() {
            blocks[l].push(v);
        }
        Partition::new(blocks.into_iter().map(VertexSet::new).collect(), labels.len())
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Block-averaged row sums of the adjacency matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix {
    /// `entries[i][j]` = edges from block i into block j (counted from block
    /// i's side) divided by `|block i|`.
    pub entries: Vec<Vec<f64>>,
    pub equitable: bool,
    /// Raw edge-endpoint counts behind `entries`.
    pub counts: Vec<Vec<usize>>,
    pub block_sizes: Vec<usize>,
}

pub fn quotient_matrix(g: &Graph, p: &Partition) -> Result<QuotientMatrix, SpectralError> {
    let n = g.order();
    let m = p.len();
    let mut label = vec![usize::MAX; n];
    for (i, b) in p.blocks().iter().enumerate() {
        for v in b.iter() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
            }
            label[v] = i;
        }
    }
    if label.contains(&usize::MAX) {
        return Err(SpectralError::InvalidPartition("partition does not match graph order".into()));
    }

    let mut counts = vec![vec![0usize; m]; m];
    let mut equitable = true;
    for (i, block) in p.blocks().iter().enumerate() {
        let mut first: Option<Vec<usize>> = None;
        for v in block.iter() {
            let mut row = vec![0usize; m];
            for u in g.neighbors(v) {
                row[label[u]] += 1;
            }
            for (j, &c) in row.iter().enumerate() {
                counts[i][j] += c;
            }
            match &first {
                None => first = Some(row),
                Some(f) => equitable &= *f == row,
            }
        }
    }
    let block_sizes: Vec<usize> = p.blocks().iter().map(VertexSet::len).collect();
    let entries = counts
        .iter()
        .zip(&block_sizes)
        .map(|(row, &size)| row.iter().map(|&c| c as f64 / size as f64).collect())
        .collect();
    Ok(QuotientMatrix {
        entries,
        equitable,
        counts,
        block_sizes,
    })
}

/// Diagonal similarity `D^{1/2} M D^{-1/2}` that makes `m` symmetric, if one
/// exists. Quotient matrices of symmetric matrices always admit one.
fn symmetrize(m: &[Vec<f64>]) -> Option<DMatrix<f64>> {
    let k = m.len();
    let scale = m.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    let eps = 1e-13 * scale;
    // ratio[j] = d_j / d_root within the connected pattern of each root
    let mut ratio = vec![f64::NAN; k];
    for root in 0..k {
        if !ratio[root].is_nan() {
            continue;
        }
        ratio[root] = 1.0;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let (a, b) = (m[i][j], m[j][i]);
                let za = a.abs() <= eps;
                let zb = b.abs() <= eps;
                if za != zb || (!za && a.signum() != b.signum()) {
                    return None;
                }
                if !za && ratio[j].is_nan() {
                    // m_ij = s_ij * sqrt(d_j / d_i) with s symmetric => d_j/d_i = m_ij / m_ji
                    ratio[j] = ratio[i] * a / b;
                    stack.push(j);
                }
            }
        }
    }
    let s = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            m[i][i]
        } else {
            let prod = m[i][j] * m[j][i];
            m[i][j].signum() * prod.max(0.0).sqrt()
        }
    });
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let back = s[(i, j)] * (ratio[j] / ratio[i]).sqrt();
                if (back - m[i][j]).abs() > 1e-12 * scale {
                    return None;
                }
            }
        }
    }
    Some(s)
}

/// Real eigenvalues of a small (possibly non-symmetric) square matrix, sorted
/// non-increasingly. Matrices diagonally similar to a symmetric one go through
/// a symmetric solver; anything else through a real Schur form, and a complex
/// eigenvalue with `|im| > SPECTRAL_TOL * max(1, ‖M‖)` is an error.
pub fn eigenvalues_small_matrix(m: &[Vec<f64>]) -> Result<Vec<f64>, SpectralError> {
    let k = m.len();
    if m.iter().any(|row| row.len() != k) {
        return Err(SpectralError::NotSquare);
    }
    if k > SMALL_MATRIX_MAX {
        return Err(SpectralError::MatrixTooLarge(k));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<f64> = if let Some(s) = symmetrize(m) {
        s.symmetric_eigenvalues().iter().copied().collect()
    } else {
        let full = DMatrix::from_fn(k, k, |i, j| m[i][j]);
        let norm = full.norm().max(1.0);
        let mut out = Vec::with_capacity(k);
        for z in full.complex_eigenvalues().iter() {
            if z.im.abs() > SPECTRAL_TOL * norm {
                return Err(SpectralError::NonRealEigenvalue { re: z.re, im: z.im });
            }
            out.push(z.re);
        }
        out
    };
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

/// `λ_i(outer) ≥ μ_i ≥ λ_{n-m+i}(outer)` for every `i`, each with slack `outer.tol`.
pub fn check_interlacing(outer: &Spectrum, inner: &[f64]) -> Result<bool, SpectralError> {
    let n = outer.len();
    let m = inner.len();
    if m > n {
        return Err(SpectralError::InnerTooLong { inner: m, outer: n });
    }
    let mut mu = inner.to_vec();
    mu.sort_by(|x, y| y.total_cmp(x));
    let tol = outer.tol;
    Ok(mu
        .iter()
        .enumerate()
        .all(|(i, &x)| outer.values[i] + tol >= x && x >= outer.values[n - m + i] - tol))
}
