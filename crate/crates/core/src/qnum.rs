//! Complex scalar kernel: q-powers on an explicit logarithm branch, q-brackets,
//! generalized q-brackets and the Inönü–Wigner scalars of the HY / su_√q(2)
//! correspondence.
//!
//! Every non-integer power `q^x` in this crate is evaluated as
//! `exp(x · log q)` with the single logarithm stored in [`Deformation`].
//! Products like `q^x · q^y` therefore equal `q^(x+y)` to rounding, whatever
//! branch was chosen.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Smallest admissible |q − q⁻¹|. Below this the bracket denominator is
/// numerically zero and the caller should work with the q → 1 limit instead.
const MIN_BRACKET_DENOMINATOR: f64 = 1e-14;

/// The deformation parameter `q` together with the logarithm used for `q^x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Deformation {
    q: Complex64,
    epsilon: Option<f64>,
    branch: i64,
    log_q: Complex64,
}

impl Deformation {
    /// Generic complex `q` on the principal logarithm branch.
    pub fn new(q: Complex64) -> Result<Self> {
        Self::with_branch(q, 0)
    }

    /// Generic complex `q` with `log q = ln|q| + i(Arg q + 2π·branch)`.
    pub fn with_branch(q: Complex64, branch: i64) -> Result<Self> {
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(Error::InvalidDeformation(format!("q = {q} is not finite")));
        }
        if q.norm() == 0.0 {
            return Err(Error::InvalidDeformation("q = 0".into()));
        }
        let log_q = Complex64::new(q.norm().ln(), q.arg() + 2.0 * PI * branch as f64);
        Self::checked(Self {
            q,
            epsilon: None,
            branch,
            log_q,
        })
    }

    /// Real `q`.
    pub fn real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    /// `q = e^{iε}` with `log q = iε` (branch 0).
    pub fn unit_circle(epsilon: f64) -> Result<Self> {
        Self::unit_circle_with_branch(epsilon, 0)
    }

    /// `q = e^{iε}` with `log q = i(ε + 2π·branch)`.
    ///
    /// The logarithm is taken from ε itself rather than from `Arg q`, so
    /// `[x] = sin(εx)/sin ε` holds for every ε, including ε ∈ (π, 2π).
    pub fn unit_circle_with_branch(epsilon: f64, branch: i64) -> Result<Self> {
        if !epsilon.is_finite() {
            return Err(Error::InvalidDeformation(format!("epsilon = {epsilon} is not finite")));
        }
        let q = Complex64::from_polar(1.0, epsilon);
        Self::checked(Self {
            q,
            epsilon: Some(epsilon),
            branch,
            log_q: Complex64::new(0.0, epsilon + 2.0 * PI * branch as f64),
        })
    }

    fn checked(d: Self) -> Result<Self> {
        let denom = d.qpow_re(1.0) - d.qpow_re(-1.0);
        if denom.norm() < MIN_BRACKET_DENOMINATOR {
            return Err(Error::InvalidDeformation(format!(
                "q = {} makes q - 1/q vanish (q = ±1 is a limit, not a deformation)",
                d.q
            )));
        }
        Ok(d)
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    pub fn branch(&self) -> i64 {
        self.branch
    }

    /// The logarithm used for every non-integer power.
    pub fn log_q(&self) -> Complex64 {
        self.log_q
    }

    /// The deformation `q^{1/2}`, whose logarithm is half of this one.
    ///
    /// Used for spin multiplets written in the `q^{1/2}` bracket.
    pub fn sqrt(&self) -> Result<Self> {
        let log_q = self.log_q * 0.5;
        Self::checked(Self {
            q: log_q.exp(),
            epsilon: self.epsilon.map(|e| 0.5 * e),
            branch: self.branch,
            log_q,
        })
    }

    /// `q^x = exp(x · log q)`.
    pub fn qpow(&self, x: Complex64) -> Complex64 {
        (x * self.log_q).exp()
    }

    pub fn qpow_re(&self, x: f64) -> Complex64 {
        (self.log_q * x).exp()
    }

    /// The q-bracket `[x] = (q^x − q^{−x}) / (q − q^{−1})`.
    pub fn bracket(&self, x: Complex64) -> Complex64 {
        (self.qpow(x) - self.qpow(-x)) / (self.qpow_re(1.0) - self.qpow_re(-1.0))
    }

    pub fn bracket_re(&self, x: f64) -> Complex64 {
        self.bracket(Complex64::new(x, 0.0))
    }

    /// The generalized bracket `[x]_{α,β} = (q^{αx} − q^{βx}) / (q^α − q^β)`.
    pub fn bracket_gen(&self, p: GenBracketParams, x: Complex64) -> Result<Complex64> {
        let denom = p.denominator(self)?;
        Ok((self.qpow(p.alpha * x) - self.qpow(p.beta * x)) / denom)
    }
}

/// `q^x` on the deformation's branch.
pub fn qpow(d: &Deformation, x: Complex64) -> Complex64 {
    d.qpow(x)
}

/// `[x]`. Infallible: a [`Deformation`] cannot hold q = ±1.
pub fn qbracket(d: &Deformation, x: Complex64) -> Complex64 {
    d.bracket(x)
}

/// `[x]_{α,β}`; errors when `q^α = q^β`.
pub fn qbracket_gen(d: &Deformation, p: GenBracketParams, x: Complex64) -> Result<Complex64> {
    d.bracket_gen(p, x)
}

/// The two exponents of the generalized bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenBracketParams {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl GenBracketParams {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        Self { alpha, beta }
    }

    pub fn real(alpha: f64, beta: f64) -> Self {
        Self::new(Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0))
    }

    /// `(α, β) = (1, −1)`, where `[x]_{α,β} = [x]`.
    pub fn symmetric() -> Self {
        Self::real(1.0, -1.0)
    }

    /// `q^α − q^β`, or an error when it vanishes.
    pub fn denominator(&self, d: &Deformation) -> Result<Complex64> {
        let denom = d.qpow(self.alpha) - d.qpow(self.beta);
        if denom.norm() < MIN_BRACKET_DENOMINATOR {
            return Err(Error::DegenerateBracket {
                alpha: self.alpha.to_string(),
                beta: self.beta.to_string(),
            });
        }
        Ok(denom)
    }

    pub fn validate(&self, d: &Deformation) -> Result<()> {
        self.denominator(d).map(|_| ())
    }

    /// `α + β`, the exponent of the tilde dressings.
    pub fn sum(&self) -> Complex64 {
        self.alpha + self.beta
    }
}

/// Scalars of the q-analogue Inönü–Wigner map from su_√q(2) to the HY oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IWScalars {
    pub mu: Complex64,
    /// The product ηξ.
    pub eta_xi: Complex64,
    /// α′ = π/2 + ℓπ.
    pub alpha_prime: f64,
    pub ell: i64,
}

impl IWScalars {
    /// `ηξ / (2μ²)`, the shift added to J₀. Equals `iα′ / log q`.
    pub fn shift(&self) -> Complex64 {
        self.eta_xi / (2.0 * self.mu * self.mu)
    }
}

/// Solve the two consistency equations for μ and ηξ on the branch `ell`.
///
/// μ = e^{−iα′/2} ((q−1)/(q+1))^{1/2},
/// ηξ = 2 e^{−iα′} ((q−1)/(q+1)) · iα′ / log q, with α′ = π/2 + ℓπ and
/// `log q` the deformation's stored logarithm.
pub fn solve_iw_scalars(d: &Deformation, ell: i64) -> Result<IWScalars> {
    let q = d.q();
    let one = Complex64::new(1.0, 0.0);
    if (q + one).norm() < MIN_BRACKET_DENOMINATOR {
        return Err(Error::InvalidDeformation("q = -1 has no IW scalars".into()));
    }
    if d.log_q().norm() == 0.0 {
        return Err(Error::InvalidDeformation("log q = 0: the contraction limit is not a solvable point".into()));
    }
    let alpha_prime = PI / 2.0 + ell as f64 * PI;
    let ratio = (q - one) / (q + one);
    let phase = Complex64::from_polar(1.0, -alpha_prime);
    let mu = Complex64::from_polar(1.0, -alpha_prime / 2.0) * ratio.sqrt();
    let eta_xi = 2.0 * phase * ratio * Complex64::new(0.0, alpha_prime) / d.log_q();
    Ok(IWScalars {
        mu,
        eta_xi,
        alpha_prime,
        ell,
    })
}

/// Residuals of the two consistency equations
/// `μ²/(q^{1/2} − q^{−1/2}) · q^{∓ηξ/(2μ²)} = ∓1/(q^{1/2} + q^{−1/2})`.
pub fn iw_consistency_residuals(d: &Deformation, s: &IWScalars) -> [f64; 2] {
    let half_plus = d.qpow_re(0.5) + d.qpow_re(-0.5);
    let half_minus = d.qpow_re(0.5) - d.qpow_re(-0.5);
    let mu2 = s.mu * s.mu;
    let expo = s.eta_xi / (2.0 * mu2);
    let lower = mu2 / half_minus * d.qpow(-expo) + 1.0 / half_plus;
    let upper = mu2 / half_minus * d.qpow(expo) - 1.0 / half_plus;
    [lower.norm(), upper.norm()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qpow_examples() {
        let d = Deformation::real(2.0).unwrap();
        assert!((d.qpow(c(3.0, 0.0)) - c(8.0, 0.0)).norm() < 1e-13);
        let u = Deformation::unit_circle(0.7).unwrap();
        assert!((u.qpow(c(0.0, 0.0)) - c(1.0, 0.0)).norm() < 1e-15);
        let half = u.qpow(c(0.5, 0.0));
        assert!((half - Complex64::from_polar(1.0, 0.35)).norm() < 1e-15);
    }

    #[test]
    fn integer_powers_do_not_depend_on_branch() {
        let q = c(0.3, -1.7);
        let d0 = Deformation::new(q).unwrap();
        let d3 = Deformation::with_branch(q, 3).unwrap();
        for n in -4..=4 {
            let x = c(n as f64, 0.0);
            assert!((d0.qpow(x) - d3.qpow(x)).norm() < 1e-11 * (1.0 + d0.qpow(x).norm()));
            assert!((d0.qpow(x) - q.powi(n)).norm() < 1e-11 * (1.0 + q.powi(n).norm()));
        }
    }

    #[test]
    fn bracket_examples() {
        let d = Deformation::new(c(0.4, 1.9)).unwrap();
        assert!(d.bracket_re(0.0).norm() < 1e-15);
        assert!((d.bracket_re(1.0) - 1.0).norm() < 1e-14);
        let two = Deformation::real(2.0).unwrap();
        assert!((two.bracket_re(2.0) - 2.5).norm() < 1e-14);
    }

    #[test]
    fn q_equal_to_plus_or_minus_one_is_rejected() {
        assert!(Deformation::real(1.0).is_err());
        assert!(Deformation::real(-1.0).is_err());
        assert!(Deformation::real(0.0).is_err());
        assert!(Deformation::unit_circle(0.0).is_err());
        assert!(Deformation::unit_circle(PI).is_err());
    }

    #[test]
    fn unit_circle_bracket_is_a_sine_ratio() {
        for &eps in &[0.3, 0.7, 2.0, 4.0, 5.9] {
            let d = Deformation::unit_circle(eps).unwrap();
            assert!((d.q().norm() - 1.0).abs() < 1e-14);
            for &x in &[-2.3, -0.5, 0.25, 1.7, 3.0] {
                let expect = (eps * x).sin() / eps.sin();
                assert!((d.bracket_re(x) - expect).norm() < 1e-12, "eps {eps} x {x}");
            }
        }
    }

    #[test]
    fn gen_bracket_examples() {
        let d = Deformation::real(2.0).unwrap();
        let p = GenBracketParams::real(0.8, -0.3);
        assert!((d.bracket_gen(p, c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        let sym = d.bracket_gen(GenBracketParams::symmetric(), c(2.0, 0.0)).unwrap();
        assert!((sym - 2.5).norm() < 1e-14);
        let g = d.bracket_gen(GenBracketParams::real(2.0, 1.0), c(3.0, 0.0)).unwrap();
        assert!((g - 28.0).norm() < 1e-12);
    }

    #[test]
    fn gen_bracket_degenerate_exponents_error() {
        let d = Deformation::real(1.5).unwrap();
        let p = GenBracketParams::real(0.7, 0.7);
        assert!(matches!(d.bracket_gen(p, c(2.0, 0.0)), Err(Error::DegenerateBracket { .. })));
        // On the unit circle q^α = q^β also when α − β is a multiple of 2π/ε.
        let u = Deformation::unit_circle(PI / 2.0).unwrap();
        assert!(GenBracketParams::real(4.0, 0.0).validate(&u).is_err());
    }

    #[test]
    fn sqrt_deformation_squares_back() {
        let d = Deformation::with_branch(c(-0.4, 0.9), 1).unwrap();
        let h = d.sqrt().unwrap();
        assert!((h.q() * h.q() - d.q()).norm() < 1e-14);
        assert!((h.qpow_re(2.0) - d.qpow_re(1.0)).norm() < 1e-14);
    }

    #[test]
    fn iw_scalars_satisfy_consistency_equations() {
        for &eps in &[0.3, 0.7, 1.1] {
            for ell in [0, 1] {
                let d = Deformation::unit_circle(eps).unwrap();
                let s = solve_iw_scalars(&d, ell).unwrap();
                let [r1, r2] = iw_consistency_residuals(&d, &s);
                assert!(r1 < 1e-12 && r2 < 1e-12, "eps {eps} ell {ell}: {r1:e} {r2:e}");
            }
        }
        let d = Deformation::unit_circle(0.7).unwrap();
        let s = solve_iw_scalars(&d, 1).unwrap();
        assert!((s.alpha_prime - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn iw_scalars_real_q_closed_form() {
        let d = Deformation::real(1.5).unwrap();
        let s = solve_iw_scalars(&d, 0).unwrap();
        assert!((s.alpha_prime - PI / 2.0).abs() < 1e-15);
        let expect = Complex64::from_polar(1.0, -PI / 4.0) * 0.2f64.sqrt();
        assert!((s.mu - expect).norm() < 1e-15);
        let [r1, r2] = iw_consistency_residuals(&d, &s);
        assert!(r1 < 1e-12 && r2 < 1e-12);
        // ηξ/(2μ²) = iα′ / ln q
        assert!((s.shift() - c(0.0, PI / 2.0) / 1.5f64.ln()).norm() < 1e-13);
    }

    #[test]
    fn iw_scalars_hold_on_other_log_branches() {
        let d = Deformation::unit_circle_with_branch(0.7, -1).unwrap();
        for ell in -2..=2 {
            let s = solve_iw_scalars(&d, ell).unwrap();
            let [r1, r2] = iw_consistency_residuals(&d, &s);
            assert!(r1 < 1e-12 && r2 < 1e-12);
        }
    }

    #[test]
    fn q_to_one_limit() {
        for sign in [1.0, -1.0] {
            let d = Deformation::real(1.0 + sign * 1e-8).unwrap();
            for x in -3..=3 {
                assert!((d.bracket_re(x as f64) - x as f64).norm() < 1e-6);
            }
        }
    }

    fn complex_strategy() -> impl Strategy<Value = Complex64> {
        (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| Complex64::new(re, im))
    }

    fn deformation_strategy() -> impl Strategy<Value = Deformation> {
        prop_oneof![
            (0.2f64..3.0).prop_filter("not pi", |e| (e - PI).abs() > 1e-3).prop_map(|e| Deformation::unit_circle(e).unwrap()),
            (1.05f64..2.5).prop_map(|q| Deformation::real(q).unwrap()),
            (0.5f64..2.0, 0.2f64..3.0).prop_map(|(r, t)| Deformation::new(Complex64::from_polar(r, t)).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric(d in deformation_strategy(), x in complex_strategy()) {
            let sum = d.bracket(x) + d.bracket(-x);
            prop_assert!(sum.norm() < 1e-14 * (1.0 + d.bracket(x).norm()));
        }

        #[test]
        fn unit_circle_bracket_is_real(eps in 0.01f64..3.13, x in -10.0f64..10.0) {
            let d = Deformation::unit_circle(eps).unwrap();
            prop_assert!(d.bracket_re(x).im.abs() < 1e-13 * (1.0 + d.bracket_re(x).re.abs()));
        }

        #[test]
        fn bracket_shift_identity(d in deformation_strategy(), x in -4.0f64..4.0) {
            let lhs = d.bracket_re(x + 1.0);
            let rhs = d.bracket_re(x) / d.q() + d.qpow_re(x);
            prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
        }

        #[test]
        fn gen_bracket_shift_identity(
            d in deformation_strategy(),
            alpha in -1.5f64..1.5,
            beta in -1.5f64..1.5,
            x in -3.0f64..3.0,
        ) {
            let p = GenBracketParams::real(alpha, beta);
            prop_assume!(p.validate(&d).is_ok());
            prop_assume!((d.qpow_re(alpha) - d.qpow_re(beta)).norm() > 1e-2);
            let xc = Complex64::new(x, 0.0);
            let lhs = d.bracket_gen(p, xc + 1.0).unwrap();
            let rhs = d.qpow_re(alpha) * d.bracket_gen(p, xc).unwrap() + d.qpow_re(beta * x);
            prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
        }

        #[test]
        fn symmetric_gen_bracket_is_ordinary_bracket(d in deformation_strategy(), x in complex_strategy()) {
            let g = d.bracket_gen(GenBracketParams::symmetric(), x).unwrap();
            prop_assert!((g - d.bracket(x)).norm() < 1e-13 * (1.0 + g.norm()));
        }
    }
}
