//! Casimir invariants from the R-matrix pair and their eigenvalues.
//!
//! `A = (R^T R - I) / (q - q^{-1})` intertwines the coproduct action, so the
//! parity-weighted partial traces `C_l = str_1((q^{2 h_rho} ⊗ I) A^l)` are
//! central. On the vector module the `C_l` act as exact scalars. Eigenvalues
//! on a highest-weight module with weight `L` come from two further routes:
//! the lower-triangular Perelomov–Popov matrix `M` (valid for any `L`), and
//! a closed product formula over the index set (valid when the exponent
//! spectrum is non-degenerate).

use crate::gtensor::{
    assemble_r, assemble_rt, graded_kron, partial_supertrace_first, SigmaTildeSource,
};
use crate::qring::{lp_exact_divide, LaurentPoly, QringError, Rat, RatFunc};
use crate::rootdata::{bilinear, rat_to_i64, BasisSpec, Weight};
use crate::scalar::Scalar;
use crate::vecrep::GradedMatrix;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CasimirError {
    /// An entry of `R^T R - I` failed exact division by `q - q^{-1}`;
    /// signals a broken construction upstream.
    #[error("entry ({0}, {1}) of R^T R - I is not divisible by q - q^-1")]
    NotDivisible(usize, usize),
    /// The partial supertrace failed to be a scalar multiple of the
    /// identity.
    #[error("Casimir operator is not scalar at entry ({0}, {1})")]
    NotScalar(usize, usize),
    /// Exact collision among the exponents `(w_a, 2rho + 2L + w_a)`; the
    /// closed eigenvalue formula refuses rather than guessing a limit.
    #[error("degenerate exponent spectrum for the closed formula")]
    DegenerateSpectrum,
    /// Weight coefficients must be quarter-integers so every exponent stays
    /// a half-integer power of q.
    #[error("weight coefficient {0} is not a quarter-integer")]
    UnsupportedWeight(String),
    #[error(transparent)]
    Ring(#[from] QringError),
}

/// Which of the three eigenvalue routes produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Operator,
    Pp,
    Closed,
}

impl Route {
    pub fn as_str(&self) -> &'static str {
        match self {
            Route::Operator => "operator",
            Route::Pp => "pp",
            Route::Closed => "closed",
        }
    }
}

/// One eigenvalue result.
#[derive(Clone, Debug)]
pub struct EigenReport {
    pub l: usize,
    pub lambda: Weight,
    pub route: Route,
    pub value: RatFunc,
    pub degenerate: bool,
}

/// Analogue of the Perelomov–Popov matrix: lower triangular in the
/// weight-descending index order.
#[derive(Clone, Debug)]
pub struct PPMatrix {
    pub lambda: Weight,
    dim: usize,
    entries: Vec<Vec<RatFunc>>,
}

impl PPMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, a: usize, b: usize) -> &RatFunc {
        &self.entries[a][b]
    }

    /// `M^l` applied to the all-ones vector.
    pub fn power_ones(&self, l: usize) -> Vec<RatFunc> {
        let mut t = vec![RatFunc::one(); self.dim];
        for _ in 0..l {
            let mut next = vec![RatFunc::zero(); self.dim];
            for a in 0..self.dim {
                let mut acc = RatFunc::zero();
                for b in 0..=a {
                    if !self.entries[a][b].is_zero() && !t[b].is_zero() {
                        acc = acc.add(&self.entries[a][b].mul(&t[b]));
                    }
                }
                next[a] = acc;
            }
            t = next;
        }
        t
    }

    pub fn row_sum(&self, a: usize) -> RatFunc {
        let mut acc = RatFunc::zero();
        for b in 0..=a {
            acc = acc.add(&self.entries[a][b]);
        }
        acc
    }
}

/// `A = (R^T R - I) / (q - q^{-1})` by entrywise exact division. Entries of
/// `R^T R - I` are honest Laurent polynomials and must each be divisible.
pub fn build_a(r: &GradedMatrix, rt: &GradedMatrix) -> Result<GradedMatrix, CasimirError> {
    let prod = rt.mul(r);
    let prod = prod.sub(&GradedMatrix::identity(prod.grading().to_vec()));
    let divisor = LaurentPoly::q_minus_qinv();
    let mut out = GradedMatrix::zero(prod.grading().to_vec());
    for (rr, cc, v) in prod.entries() {
        if !v.is_polynomial() {
            return Err(CasimirError::NotDivisible(rr, cc));
        }
        let quo = lp_exact_divide(v.numerator(), &divisor)
            .map_err(|_| CasimirError::NotDivisible(rr, cc))?;
        out.set(rr, cc, RatFunc::from(quo));
    }
    Ok(out)
}

/// `A` for the shipped vector representation.
pub fn build_a_for(spec: &BasisSpec) -> Result<GradedMatrix, CasimirError> {
    let r = assemble_r(spec, SigmaTildeSource::Closed);
    let rt = assemble_rt(spec);
    build_a(&r, &rt)
}

fn scalar_of_identity(m: &GradedMatrix) -> Result<RatFunc, CasimirError> {
    let lam = m.at(0, 0);
    let want = GradedMatrix::identity(m.grading().to_vec()).scale(&lam);
    if let Some((r, c, _, _)) = m.first_difference(&want) {
        return Err(CasimirError::NotScalar(r, c));
    }
    Ok(lam)
}

/// The Casimir operators `C_0 .. C_lmax` on `V`, sharing one `A` power
/// chain. Each is verified to be an exact scalar multiple of the identity.
pub fn casimir_operators_up_to(
    spec: &BasisSpec,
    lmax: usize,
) -> Result<Vec<GradedMatrix>, CasimirError> {
    let a = build_a_for(spec)?;
    casimir_operators_from(spec, &a, lmax)
}

/// Same, but from a caller-supplied `A` (used by the negative controls).
pub fn casimir_operators_from(
    spec: &BasisSpec,
    a: &GradedMatrix,
    lmax: usize,
) -> Result<Vec<GradedMatrix>, CasimirError> {
    let q2rho = crate::vecrep::q_weight_diag(spec, &spec.rho().doubled())
        .expect("rho pairings are half-integers");
    let idv = GradedMatrix::identity(spec.grading());
    let weight = graded_kron(&q2rho, &idv);
    let mut power = GradedMatrix::identity(a.grading().to_vec());
    let mut out = Vec::with_capacity(lmax + 1);
    for _ in 0..=lmax {
        let c = partial_supertrace_first(spec, &weight.mul(&power));
        scalar_of_identity(&c)?;
        out.push(c);
        power = power.mul(a);
    }
    Ok(out)
}

/// `C_l` on `V`; the result is an exact scalar multiple of the identity.
pub fn casimir_operator(spec: &BasisSpec, l: usize) -> Result<GradedMatrix, CasimirError> {
    Ok(casimir_operators_up_to(spec, l)?
        .pop()
        .expect("lmax included"))
}

/// The scalar by which `C_l` acts on `V`.
pub fn casimir_scalar(spec: &BasisSpec, l: usize) -> Result<RatFunc, CasimirError> {
    scalar_of_identity(&casimir_operator(spec, l)?)
}

/// Validate that `4 (L, w)` is integral for every index weight so all
/// exponents land on integer powers of `s`.
fn validate_lambda(lambda: &Weight) -> Result<(), CasimirError> {
    let four = Rat::from_integer(4.into());
    for c in lambda.eps.iter().chain(lambda.delta.iter()) {
        if !(c * four.clone()).is_integer() {
            return Err(CasimirError::UnsupportedWeight(c.to_string()));
        }
    }
    Ok(())
}

/// s-exponent of `q^{(u, v)}` where the pairing may be a half-integer.
fn exp_of(u: &Weight, v: &Weight) -> i64 {
    rat_to_i64(&(bilinear(u, v).unwrap() * Rat::from_integer(2.into())))
}

/// `C(L_0) = (d_1, d_1 + 2 rho)`, the quadratic label of the vector module;
/// equals `m - n - 1`.
pub fn c_lambda0(spec: &BasisSpec) -> i64 {
    let d1 = Weight::basis_delta(spec.l, spec.k, 1);
    rat_to_i64(&bilinear(&d1, &d1.add(&spec.rho().doubled())).unwrap())
}

/// Diagonal entry `alpha_a = (q^{(w_a, 2L + 2rho + w_a) - C(L_0)} - 1) / (q - q^{-1})`.
fn alpha_diag(spec: &BasisSpec, lambda: &Weight, a: usize) -> RatFunc {
    let c0 = c_lambda0(spec);
    let wa = spec.weight(a);
    let e = exp_of(wa, &lambda.doubled().add(&spec.rho().doubled()).add(wa)) - 2 * c0;
    let num = &LaurentPoly::s_pow(e) - &LaurentPoly::one();
    RatFunc::new(num, LaurentPoly::q_minus_qinv()).expect("nonzero denominator")
}

/// The Perelomov–Popov matrix for highest weight `L`.
pub fn pp_matrix(spec: &BasisSpec, lambda: &Weight) -> Result<PPMatrix, CasimirError> {
    validate_lambda(lambda)?;
    let d = spec.dim();
    let c0 = c_lambda0(spec);
    let mut entries = vec![vec![RatFunc::zero(); d]; d];
    for a in 0..d {
        for b in 0..=a {
            if a == b {
                entries[a][b] = alpha_diag(spec, lambda, a);
            } else {
                // q^{(2L, w_a) - C0} ((-1)^{[b]} q^{(2rho, w_b)} - delta_{a, bar b})
                let e1 = exp_of(&lambda.doubled(), spec.weight(a)) - 2 * c0;
                let e2 = exp_of(&spec.rho().doubled(), spec.weight(b));
                let mut inner = LaurentPoly::s_pow(e2);
                if spec.parity(b) == 1 {
                    inner = -&inner;
                }
                if spec.bar(b) == a {
                    inner = &inner - &LaurentPoly::one();
                }
                entries[a][b] = RatFunc::from(inner.shifted(e1));
            }
        }
    }
    Ok(PPMatrix {
        lambda: lambda.clone(),
        dim: d,
        entries,
    })
}

/// `t^(1)_a = (q^{2(L, w_a)} - 1) / (q - q^{-1})` directly.
pub fn t1_direct(spec: &BasisSpec, lambda: &Weight, a: usize) -> Result<RatFunc, CasimirError> {
    validate_lambda(lambda)?;
    let e = exp_of(&lambda.doubled(), spec.weight(a));
    let num = &LaurentPoly::s_pow(e) - &LaurentPoly::one();
    Ok(RatFunc::new(num, LaurentPoly::q_minus_qinv()).expect("nonzero denominator"))
}

/// Eigenvalue of `C_l` via the Perelomov–Popov recursion
/// `chi = sum_a (-1)^{[a]} q^{(2rho, w_a)} (M^l 1)_a`; valid for any `L`.
pub fn chi_pp(spec: &BasisSpec, lambda: &Weight, l: usize) -> Result<EigenReport, CasimirError> {
    let m = pp_matrix(spec, lambda)?;
    let t = m.power_ones(l);
    let mut acc = RatFunc::zero();
    for a in 0..spec.dim() {
        let e = exp_of(&spec.rho().doubled(), spec.weight(a));
        let mut term = t[a].mul(&RatFunc::s_pow(e));
        if spec.parity(a) == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    let degenerate = exponents(spec, lambda).is_err();
    Ok(EigenReport {
        l,
        lambda: lambda.clone(),
        route: Route::Pp,
        value: acc,
        degenerate,
    })
}

/// The exponent spectrum `(w_a, 2rho + 2L + w_a)` as exact rationals;
/// `Err` on any collision (including the `f(a)` poles at exponent zero).
fn exponents(spec: &BasisSpec, lambda: &Weight) -> Result<Vec<Rat>, CasimirError> {
    let shift = spec.rho().doubled().add(&lambda.doubled());
    let mut out = Vec::with_capacity(spec.dim());
    for a in 0..spec.dim() {
        let wa = spec.weight(a);
        out.push(bilinear(wa, &shift.add(wa)).unwrap());
    }
    for i in 0..out.len() {
        for j in (i + 1)..out.len() {
            if out[i] == out[j] {
                return Err(CasimirError::DegenerateSpectrum);
            }
        }
        // a vanishing exponent poles f(a) except at the genuine zero index
        if out[i].is_zero() && spec.zero_pos() != Some(i) {
            return Err(CasimirError::DegenerateSpectrum);
        }
    }
    Ok(out)
}

/// Eigenvalue of `C_l` from the closed product formula; requires a
/// non-degenerate exponent spectrum.
pub fn chi_closed(
    spec: &BasisSpec,
    lambda: &Weight,
    l: usize,
) -> Result<EigenReport, CasimirError> {
    validate_lambda(lambda)?;
    let exps = exponents(spec, lambda)?;
    let c0 = c_lambda0(spec);
    let shift = spec.rho().doubled().add(&lambda.doubled());
    let mut acc = RatFunc::zero();
    for a in 0..spec.dim() {
        let wa = spec.weight(a);
        let ea = &exps[a]; // (w_a, 2rho + 2L + w_a), a half-integer
        let ea_s = rat_to_i64(&(ea * Rat::from_integer(2.into())));
        // f(a)
        let f = if spec.m % 2 == 0 {
            // 1 - (q - q^{-1}) q / (q^{2 e_a} - 1)
            let den = &LaurentPoly::s_pow(2 * ea_s) - &LaurentPoly::one();
            let frac = RatFunc::new(&LaurentPoly::q_minus_qinv() * &LaurentPoly::q_pow(1), den)
                .expect("nonzero by spectrum check");
            RatFunc::one().sub(&frac)
        } else if spec.zero_pos() == Some(a) {
            RatFunc::one()
        } else {
            // 1 + (q - q^{-1}) q^{e_a} / (q^{2 e_a} - 1)
            let den = &LaurentPoly::s_pow(2 * ea_s) - &LaurentPoly::one();
            let frac = RatFunc::new(
                &LaurentPoly::q_minus_qinv() * &LaurentPoly::s_pow(ea_s),
                den,
            )
            .expect("nonzero by spectrum check");
            RatFunc::one().add(&frac)
        };
        // alpha_a^l and the product over b != a, assembled as one numerator
        // and one denominator so canonicalisation runs once per term
        let alpha_num = {
            let e = exps[a].clone() - Rat::from_integer(c0.into());
            &LaurentPoly::s_pow(rat_to_i64(&(e * Rat::from_integer(2.into()))))
                - &LaurentPoly::one()
        };
        let mut num_prod = LaurentPoly::one();
        let mut den_prod = LaurentPoly::one();
        for _ in 0..l {
            num_prod = &num_prod * &alpha_num;
            den_prod = &den_prod * &LaurentPoly::q_minus_qinv();
        }
        for b in 0..spec.dim() {
            if b == a {
                continue;
            }
            let wb = spec.weight(b);
            let num_e =
                rat_to_i64(&(bilinear(wb, &shift.sub(wb)).unwrap() * Rat::from_integer(2.into())));
            let den_e = rat_to_i64(&(&exps[b] * Rat::from_integer(2.into())));
            num_prod = &num_prod * &(&LaurentPoly::s_pow(ea_s) - &LaurentPoly::s_pow(num_e));
            den_prod = &den_prod * &(&LaurentPoly::s_pow(ea_s) - &LaurentPoly::s_pow(den_e));
        }
        let prod = RatFunc::new(num_prod, den_prod).expect("distinct exponents");
        // (-1)^{[a]} q^{C0 - (w_a, w_a)}
        let lead_e = 2 * c0 - exp_of(wa, wa);
        let mut term = RatFunc::s_pow(lead_e).mul(&f).mul(&prod);
        if spec.parity(a) == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    Ok(EigenReport {
        l,
        lambda: lambda.clone(),
        route: Route::Closed,
        value: acc,
        degenerate: false,
    })
}

/// Operator-route report: the scalar of `C_l` on `V`, whose highest weight
/// is `d_1`.
pub fn chi_operator(spec: &BasisSpec, l: usize) -> Result<EigenReport, CasimirError> {
    let value = casimir_scalar(spec, l)?;
    Ok(EigenReport {
        l,
        lambda: Weight::basis_delta(spec.l, spec.k, 1),
        route: Route::Operator,
        value,
        degenerate: false,
    })
}
