//! Dense complex operators on truncated bases.
//!
//! Tensor products put the FIRST factor on the slow (major) index: the flat
//! index of `|i_a⟩ ⊗ |i_b⟩` is `i_a · D_b + i_b`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Off-diagonal magnitude above which an operator is not treated as diagonal.
pub const DIAGONAL_TOL: f64 = 1e-13;

/// Label of the basis an operator acts on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// Ladder states `|ψ_n⟩`, `n = n_min .. n_min + dim − 1`.
    Fock { n_min: i64, dim: usize },
    /// Spin states `|j, m⟩` with `2m = two_m_min, two_m_min + 2, …` (`dim` of them).
    Spin { two_j: i64, two_m_min: i64, dim: usize },
    Generic { dim: usize },
    /// Ordered tensor product; never nested (products are flattened).
    Tensor(Vec<Basis>),
}

impl Basis {
    pub fn dim(&self) -> usize {
        match self {
            Basis::Fock { dim, .. } | Basis::Spin { dim, .. } | Basis::Generic { dim } => *dim,
            Basis::Tensor(fs) => fs.iter().map(Basis::dim).product(),
        }
    }

    /// Dimensions of the tensor factors (a single entry for non-product bases).
    pub fn factor_dims(&self) -> Vec<usize> {
        match self {
            Basis::Tensor(fs) => fs.iter().map(Basis::dim).collect(),
            b => vec![b.dim()],
        }
    }

    pub fn tensor(&self, other: &Basis) -> Basis {
        let mut fs = match self {
            Basis::Tensor(fs) => fs.clone(),
            b => vec![b.clone()],
        };
        match other {
            Basis::Tensor(gs) => fs.extend(gs.iter().cloned()),
            b => fs.push(b.clone()),
        }
        Basis::Tensor(fs)
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Fock { n_min, dim } => write!(f, "fock[{n_min}; {dim}]"),
            Basis::Spin { two_j, two_m_min, dim } => write!(f, "spin[2j={two_j}, 2m_min={two_m_min}; {dim}]"),
            Basis::Generic { dim } => write!(f, "generic[{dim}]"),
            Basis::Tensor(fs) => {
                let parts: Vec<String> = fs.iter().map(|b| b.to_string()).collect();
                write!(f, "{}", parts.join(" ⊗ "))
            }
        }
    }
}

/// A square complex matrix tagged with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Op {
    basis: Basis,
    entries: Array2<Complex64>,
}

impl Op {
    pub fn from_array(basis: Basis, entries: Array2<Complex64>) -> Result<Self> {
        let d = basis.dim();
        if d == 0 {
            return Err(Error::InvalidParams("operator dimension must be at least 1".into()));
        }
        if entries.dim() != (d, d) {
            return Err(Error::Mismatch(format!(
                "entries have shape {:?} but basis {basis} has dimension {d}",
                entries.dim()
            )));
        }
        if entries.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::InvalidParams("operator entries must be finite".into()));
        }
        Ok(Self { basis, entries })
    }

    pub fn zeros(basis: Basis) -> Self {
        let d = basis.dim();
        Self {
            basis,
            entries: Array2::zeros((d, d)),
        }
    }

    pub fn identity(basis: Basis) -> Self {
        let d = basis.dim();
        Self {
            basis,
            entries: Array2::eye(d),
        }
    }

    pub fn from_diag<I>(basis: Basis, diag: I) -> Self
    where
        I: IntoIterator<Item = Complex64>,
    {
        let mut op = Self::zeros(basis);
        let d = op.dim();
        let mut count = 0;
        for (i, z) in diag.into_iter().enumerate() {
            assert!(i < d, "diagonal longer than the basis");
            op.entries[[i, i]] = z;
            count += 1;
        }
        assert_eq!(count, d, "diagonal shorter than the basis");
        op
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[[row, col]]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, z: Complex64) {
        self.entries[[row, col]] = z;
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.entries.diag().to_vec()
    }

    pub fn max_off_diagonal(&self) -> f64 {
        self.entries
            .indexed_iter()
            .filter(|((i, j), _)| i != j)
            .map(|(_, z)| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        self.max_off_diagonal() < DIAGONAL_TOL
    }

    pub fn scale(&self, c: Complex64) -> Op {
        Op {
            basis: self.basis.clone(),
            entries: self.entries.mapv(|z| z * c),
        }
    }

    /// Relabel the basis, keeping the entries. Dimensions must agree.
    pub fn with_basis(&self, basis: Basis) -> Result<Op> {
        Op::from_array(basis, self.entries.clone())
    }

    /// Largest entrywise difference, ignoring basis labels.
    pub fn max_abs_diff(&self, other: &Op) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Mismatch(format!("dimensions {} and {}", self.dim(), other.dim())));
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_same(&self, other: &Op) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::Mismatch(format!("basis {} vs {}", self.basis, other.basis)));
        }
        Ok(())
    }

    fn assert_same(&self, other: &Op) {
        if let Err(e) = self.check_same(other) {
            panic!("{e}");
        }
    }
}

impl Add for &Op {
    type Output = Op;

    /// Panics when the bases differ.
    fn add(self, rhs: &Op) -> Op {
        self.assert_same(rhs);
        Op {
            basis: self.basis.clone(),
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Sub for &Op {
    type Output = Op;

    /// Panics when the bases differ.
    fn sub(self, rhs: &Op) -> Op {
        self.assert_same(rhs);
        Op {
            basis: self.basis.clone(),
            entries: &self.entries - &rhs.entries,
        }
    }
}

impl Mul for &Op {
    type Output = Op;

    /// Matrix product. Panics when the bases differ.
    fn mul(self, rhs: &Op) -> Op {
        self.assert_same(rhs);
        Op {
            basis: self.basis.clone(),
            entries: self.entries.dot(&rhs.entries),
        }
    }
}

impl Mul<Complex64> for &Op {
    type Output = Op;

    fn mul(self, rhs: Complex64) -> Op {
        self.scale(rhs)
    }
}

impl Mul<f64> for &Op {
    type Output = Op;

    fn mul(self, rhs: f64) -> Op {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Neg for &Op {
    type Output = Op;

    fn neg(self) -> Op {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Op> for Op {
            type Output = Op;
            fn $m(self, rhs: Op) -> Op {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Op> for Op {
            type Output = Op;
            fn $m(self, rhs: &Op) -> Op {
                (&self).$m(rhs)
            }
        }
        impl $tr<Op> for &Op {
            type Output = Op;
            fn $m(self, rhs: Op) -> Op {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Rows/columns excluded at the low and high end of every factor index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorWindow {
    pub low_margin: usize,
    pub high_margin: usize,
}

impl InteriorWindow {
    pub const FULL: InteriorWindow = InteriorWindow::new(0, 0);

    pub const fn new(low_margin: usize, high_margin: usize) -> Self {
        Self {
            low_margin,
            high_margin,
        }
    }

    /// Margin `m` on both ends.
    pub const fn symmetric(m: usize) -> Self {
        Self::new(m, m)
    }

    pub fn is_full(&self) -> bool {
        self.low_margin == 0 && self.high_margin == 0
    }

    /// Flat indices of `basis` whose every factor index lies inside the window.
    pub fn mask(&self, basis: &Basis) -> Result<Vec<bool>> {
        let dims = basis.factor_dims();
        for &d in &dims {
            if self.low_margin + self.high_margin >= d {
                return Err(Error::WindowExhausted {
                    low: self.low_margin,
                    high: self.high_margin,
                    dim: d,
                });
            }
        }
        let total: usize = dims.iter().product();
        let mask = (0..total)
            .map(|flat| {
                let mut rest = flat;
                dims.iter().rev().all(|&d| {
                    let n = rest % d;
                    rest /= d;
                    n >= self.low_margin && n + self.high_margin < d
                })
            })
            .collect();
        Ok(mask)
    }
}

impl Default for InteriorWindow {
    fn default() -> Self {
        Self::symmetric(1)
    }
}

/// `AB − BA`.
pub fn commutator(a: &Op, b: &Op) -> Result<Op> {
    a.check_same(b)?;
    Ok(a * b - b * a)
}

/// `AB − p·BA`.
pub fn qcommutator(a: &Op, b: &Op, p: Complex64) -> Result<Op> {
    a.check_same(b)?;
    Ok(a * b - (b * a).scale(p))
}

/// Kronecker product, first factor major.
pub fn tensor(a: &Op, b: &Op) -> Op {
    let (da, db) = (a.dim(), b.dim());
    let mut entries = Array2::zeros((da * db, da * db));
    for ((i, j), &x) in a.entries.indexed_iter() {
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for ((k, l), &y) in b.entries.indexed_iter() {
            entries[[i * db + k, j * db + l]] = x * y;
        }
    }
    Op {
        basis: a.basis.tensor(&b.basis),
        entries,
    }
}

/// Apply `f` to the diagonal of a diagonal operator.
pub fn diag_fn<F>(f: F, m: &Op) -> Result<Op>
where
    F: Fn(Complex64) -> Complex64,
{
    try_diag_fn(|z| Ok(f(z)), m)
}

/// [`diag_fn`] with a fallible scalar function.
pub fn try_diag_fn<F>(f: F, m: &Op) -> Result<Op>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let off = m.max_off_diagonal();
    if off >= DIAGONAL_TOL {
        return Err(Error::NotDiagonal(off));
    }
    let diag = m.diagonal().into_iter().map(f).collect::<Result<Vec<_>>>()?;
    Ok(Op::from_diag(m.basis.clone(), diag))
}

/// Apply `f` entrywise to the diagonals of two commuting diagonal operators.
pub fn diag_fn2<F>(f: F, a: &Op, b: &Op) -> Result<Op>
where
    F: Fn(Complex64, Complex64) -> Complex64,
{
    try_diag_fn2(|x, y| Ok(f(x, y)), a, b)
}

pub fn try_diag_fn2<F>(f: F, a: &Op, b: &Op) -> Result<Op>
where
    F: Fn(Complex64, Complex64) -> Result<Complex64>,
{
    a.check_same(b)?;
    for m in [a, b] {
        let off = m.max_off_diagonal();
        if off >= DIAGONAL_TOL {
            return Err(Error::NotDiagonal(off));
        }
    }
    let diag = a
        .diagonal()
        .into_iter()
        .zip(b.diagonal())
        .map(|(x, y)| f(x, y))
        .collect::<Result<Vec<_>>>()?;
    Ok(Op::from_diag(a.basis.clone(), diag))
}

/// `max |(A − B)_{ij}|` over rows and columns inside the window.
pub fn interior_residual(a: &Op, b: &Op, w: InteriorWindow) -> Result<f64> {
    a.check_same(b)?;
    let mask = w.mask(&a.basis)?;
    let mut worst: f64 = 0.0;
    for ((i, j), x) in a.entries.indexed_iter() {
        if mask[i] && mask[j] {
            worst = worst.max((x - b.entries[[i, j]]).norm());
        }
    }
    Ok(worst)
}

/// Residual of `A` against zero on the window.
pub fn interior_norm(a: &Op, w: InteriorWindow) -> Result<f64> {
    interior_residual(a, &Op::zeros(a.basis.clone()), w)
}
