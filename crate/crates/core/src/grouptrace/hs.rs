use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::group::FiniteGroup;
use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Allowed distance from unitarity for matrices of an [`AlmostHom`].
pub const UNITARY_TOL: f64 = 1e-8;

/// Normalized Hilbert–Schmidt norm `sqrt(tr(A* A) / n)`.
pub fn hs_norm(a: &CMatrix) -> f64 {
    (a.iter().map(Complex64::norm_sqr).sum::<f64>() / a.nrows() as f64).sqrt()
}

pub fn hs_distance(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    if u.shape() != v.shape() || u.nrows() != u.ncols() {
        return Err(Error::Dimension(format!("HS distance between {:?} and {:?} matrices", u.shape(), v.shape())));
    }
    Ok(hs_norm(&(u - v)))
}

/// `max |U*U - I|` entrywise.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    let p = u.adjoint() * u - CMatrix::identity(n, n);
    p.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// `R`'s diagonal moved into `Q`.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = z.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= ph;
        }
    }
    q
}

/// Unitary `exp(iεH)` for a random Hermitian `H` of operator norm at most 1,
/// so its HS distance from the identity is at most `ε`.
pub fn unitary_near_identity<R: Rng>(n: usize, eps: f64, rng: &mut R) -> CMatrix {
    let w = random_unitary(n, rng);
    let diag = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex64::from_polar(1.0, eps * rng.random_range(-1.0..=1.0))
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    &w * diag * w.adjoint()
}

/// One unitary matrix per group element.
#[derive(Debug, Clone)]
pub struct AlmostHom {
    group: Arc<FiniteGroup>,
    dim: usize,
    matrices: Vec<CMatrix>,
}

impl AlmostHom {
    pub fn new(group: Arc<FiniteGroup>, matrices: Vec<CMatrix>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Argument(format!("{} matrices for a group of order {}", matrices.len(), group.order())));
        }
        let dim = matrices.first().map_or(0, |m| m.nrows());
        if dim == 0 {
            return Err(Error::Argument("matrices must be at least 1x1".into()));
        }
        for (i, m) in matrices.iter().enumerate() {
            if m.shape() != (dim, dim) {
                return Err(Error::Dimension(format!("matrix for {} is not {dim}x{dim}", group.label(i))));
            }
            let d = unitarity_defect(m);
            if d > UNITARY_TOL {
                return Err(Error::Argument(format!("matrix for {} is {d:e} from unitary", group.label(i))));
            }
        }
        Ok(AlmostHom { group, dim, matrices })
    }

    /// Left regular representation by permutation matrices.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let matrices = (0..n)
            .map(|g| {
                let mut m = CMatrix::zeros(n, n);
                for x in 0..n {
                    m[(group.mul(g, x), x)] = Complex64::new(1.0, 0.0);
                }
                m
            })
            .collect();
        AlmostHom { group, dim: n, matrices }
    }

    /// Every element mapped to an independent random unitary.
    pub fn random<R: Rng>(group: Arc<FiniteGroup>, dim: usize, rng: &mut R) -> Self {
        let matrices = (0..group.order()).map(|_| random_unitary(dim, rng)).collect();
        AlmostHom { group, dim, matrices }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `W f(g) W*` for every `g`.
    pub fn conjugated(&self, w: &CMatrix) -> Result<Self> {
        if w.shape() != (self.dim, self.dim) {
            return Err(Error::Dimension("conjugating matrix has the wrong size".into()));
        }
        let matrices = self.matrices.iter().map(|m| w * m * w.adjoint()).collect();
        AlmostHom::new(self.group.clone(), matrices)
    }

    /// Replaces the matrix at `g`.
    pub fn with_value(&self, g: usize, m: CMatrix) -> Result<Self> {
        let mut matrices = self.matrices.clone();
        *matrices.get_mut(g).ok_or_else(|| Error::Argument(format!("no element {g}")))? = m;
        AlmostHom::new(self.group.clone(), matrices)
    }

    /// Normalized character `tr f(g) / dim`.
    pub fn normalized_trace(&self, g: usize) -> Complex64 {
        self.matrices[g].trace() / self.dim as f64
    }
}

/// `max_{g,h} d_HS(f(g) f(h), f(gh))`.
pub fn hom_defect(f: &AlmostHom) -> f64 {
    let g = &f.group;
    let n = g.order();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let lhs = &f.matrices[a] * &f.matrices[b];
            worst = worst.max(hs_norm(&(lhs - &f.matrices[g.mul(a, b)])));
        }
    }
    worst
}

/// `max_g d_HS(f(g), π(g))` for one candidate homomorphism `π`.
pub fn nearest_hom_distance(f: &AlmostHom, pi: &AlmostHom) -> Result<f64> {
    if !Arc::ptr_eq(&f.group, &pi.group) && *f.group != *pi.group {
        return Err(Error::Argument("maps are defined on different groups".into()));
    }
    if f.dim != pi.dim {
        return Err(Error::Dimension(format!("dimensions {} and {} differ", f.dim, pi.dim)));
    }
    let mut worst: f64 = 0.0;
    for (a, b) in f.matrices.iter().zip(&pi.matrices) {
        worst = worst.max(hs_distance(a, b)?);
    }
    Ok(worst)
}
