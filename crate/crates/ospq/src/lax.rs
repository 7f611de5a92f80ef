//! The table of raising operators `sigma_hat[b,a]` that populate the Lax
//! operator, built in a given matrix realization of the generators.
//!
//! Construction is a two-stage process: the fundamental values attached to
//! the simple roots seed the table, and the induction relation
//!
//! ```text
//! sigma[b,a] = q^{-(w_b,w_a)} sigma[b,c] sigma[c,a]
//!            - q^{-(w_c,w_c)} (-1)^{([b]+[c])([a]+[c])} sigma[c,a] sigma[b,c]
//! ```
//!
//! (for any pivot `c` strictly between `a` and `b` in the weight order with
//! `c` distinct from both bars) fills in the rest. The engine only consumes
//! generator matrices, so any representation satisfying the defining
//! relations works; the crate ships the vector representation.

use crate::qring::{Rat, RatFunc};
use crate::rootdata::{rat_to_i64, BasisSpec, RootKind};
use crate::vecrep::{q_h_diag, q_weight_diag, GradedMatrix, SimpleGen};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaxError {
    /// No admissible pivot with already-known sub-entries exists. Cannot
    /// happen for a valid basis spec; kept as an honest error for foreign
    /// generator sets.
    #[error("no admissible pivot chain for pair ({0}, {1})")]
    MissingPrerequisite(usize, usize),
    /// Requested pair is not weight-decreasing.
    #[error("invalid pair ({0}, {1}): needs weight(b) > weight(a)")]
    InvalidPair(usize, usize),
}

/// Association from ordered index pairs `(b, a)` with `weight(b) >
/// weight(a)` to matrices. Positions are used as keys; `b < a` in position
/// order encodes the weight condition.
#[derive(Clone, Debug)]
pub struct SigmaTable {
    spec: BasisSpec,
    entries: BTreeMap<(usize, usize), GradedMatrix>,
}

impl SigmaTable {
    pub fn spec(&self) -> &BasisSpec {
        &self.spec
    }

    pub fn get(&self, b: usize, a: usize) -> Option<&GradedMatrix> {
        self.entries.get(&(b, a))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        let d = self.spec.dim();
        self.entries.len() == d * (d - 1) / 2
    }

    /// Copy with one entry swapped out; the negative controls of the
    /// verification suites are built from this.
    pub fn with_entry_replaced(&self, b: usize, a: usize, value: GradedMatrix) -> SigmaTable {
        let mut t = self.clone();
        t.entries.insert((b, a), value);
        t
    }
}

fn bil_i64(spec: &BasisSpec, a: usize, b: usize) -> i64 {
    let v = crate::rootdata::bilinear(spec.weight(a), spec.weight(b)).unwrap();
    rat_to_i64(&v)
}

/// Fundamental values: one or two table entries per simple root, given by
/// `A e_c q^{h_c/2}` with the root-dependent prefactor, plus the pinned
/// zero entry `sigma[l, bar l] = 0` for even `m`.
pub fn seed_sigma_table(spec: &BasisSpec, gens: &[SimpleGen]) -> SigmaTable {
    let mut entries = BTreeMap::new();
    for g in gens {
        let base = g.e.mul(&q_h_diag(spec, &g.h, 1));
        let (b, a) = g.root.pair;
        match g.root.kind {
            RootKind::EvenChain(_) => {
                // sigma[i,i+1] = -sigma[bar(i+1),bar i] = q^(1/2) e q^(h/2)
                let v = base.scale(&RatFunc::s_pow(1));
                entries.insert((spec.bar(a), spec.bar(b)), v.neg());
                entries.insert((b, a), v);
            }
            RootKind::EvenTail if spec.m % 2 == 0 => {
                // sigma[l-1,bar l] = -sigma[l,bar(l-1)] = q^(1/2) e q^(h/2);
                // sigma[l,bar l] = 0
                let v = base.scale(&RatFunc::s_pow(1));
                entries.insert((spec.bar(a), spec.bar(b)), v.neg());
                entries.insert((b, a), v);
                let l_pos = spec.pos_of_index(crate::rootdata::IndexLabel::Even(spec.l));
                entries.insert((l_pos, spec.bar(l_pos)), GradedMatrix::zero(spec.grading()));
            }
            RootKind::EvenTail => {
                // sigma[l,l+1] = e q^(h/2); sigma[l+1,bar l] = -q^(1/2) sigma[l,l+1]
                entries.insert(
                    (spec.bar(a), spec.bar(b)),
                    base.scale(&RatFunc::s_pow(1)).neg(),
                );
                entries.insert((b, a), base);
            }
            RootKind::OddChain(_) => {
                // sigma[mu,mu+1] = sigma[bar(mu+1),bar mu] = q^(-1/2) e q^(h/2)
                let v = base.scale(&RatFunc::s_pow(-1));
                entries.insert((spec.bar(a), spec.bar(b)), v.clone());
                entries.insert((b, a), v);
            }
            RootKind::Crossing => {
                // sigma[k,1] = q^(1/2) e q^(h/2);
                // sigma[bar 1, bar k] = (-1)^k q^(-1) sigma[k,1]
                let v = base.scale(&RatFunc::s_pow(1));
                let sgn = if spec.k % 2 == 0 {
                    RatFunc::q_pow(-1)
                } else {
                    RatFunc::q_pow(-1).neg()
                };
                entries.insert((spec.bar(a), spec.bar(b)), v.scale(&sgn));
                entries.insert((b, a), v);
            }
        }
    }
    SigmaTable {
        spec: spec.clone(),
        entries,
    }
}

/// One induction step through pivot `c`; requires both sub-entries present.
pub fn sigma_from_pivot(
    table: &SigmaTable,
    b: usize,
    c: usize,
    a: usize,
) -> Result<GradedMatrix, LaxError> {
    let spec = &table.spec;
    let bc = table.get(b, c).ok_or(LaxError::MissingPrerequisite(b, c))?;
    let ca = table.get(c, a).ok_or(LaxError::MissingPrerequisite(c, a))?;
    let e1 = -2 * bil_i64(spec, b, a);
    let e2 = -2 * bil_i64(spec, c, c);
    let sgn = (spec.parity(b) + spec.parity(c)) * (spec.parity(a) + spec.parity(c)) % 2;
    let t1 = bc.mul(ca).scale(&RatFunc::s_pow(e1));
    let mut t2 = ca.mul(bc).scale(&RatFunc::s_pow(e2));
    if sgn == 1 {
        t2 = t2.neg();
    }
    Ok(t1.sub(&t2))
}

/// Pivots admissible for `(b, a)`: strictly between in the weight order and
/// distinct from both bars.
pub fn admissible_pivots(spec: &BasisSpec, b: usize, a: usize) -> Vec<usize> {
    ((b + 1)..a)
        .filter(|&c| c != spec.bar(a) && c != spec.bar(b))
        .collect()
}

/// Complete a seeded table: walk pairs by increasing weight-order distance
/// and apply the induction relation through the first admissible pivot.
pub fn extend_sigma_table(table: SigmaTable) -> Result<SigmaTable, LaxError> {
    let mut table = table;
    let d = table.spec.dim();
    let mut pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|b| ((b + 1)..d).map(move |a| (b, a)))
        .collect();
    pairs.sort_by_key(|&(b, a)| a - b);
    for (b, a) in pairs {
        if table.entries.contains_key(&(b, a)) {
            continue;
        }
        let c = admissible_pivots(&table.spec, b, a)
            .into_iter()
            .find(|&c| table.get(b, c).is_some() && table.get(c, a).is_some())
            .ok_or(LaxError::MissingPrerequisite(b, a))?;
        let v = sigma_from_pivot(&table, b, c, a)?;
        table.entries.insert((b, a), v);
    }
    Ok(table)
}

/// Closed form of the upper-triangular R-matrix generators:
/// `sigma_tilde[b,a] = E^b_a - (-1)^{[b]([a]+[b])} xi_a xi_b
/// q^{(rho, w_a - w_b)} E^{bar a}_{bar b}`.
pub fn sigma_tilde_closed(spec: &BasisSpec, b: usize, a: usize) -> Result<GradedMatrix, LaxError> {
    if !spec.theta(b, a) {
        return Err(LaxError::InvalidPair(b, a));
    }
    let pa = spec.parity(a);
    let pb = spec.parity(b);
    let sgn = (pb * ((pa + pb) % 2)) % 2;
    let exp = crate::rootdata::bilinear(spec.rho(), &spec.weight(a).sub(spec.weight(b))).unwrap()
        * Rat::from_integer(2.into());
    let mut coef = RatFunc::s_pow(rat_to_i64(&exp)).scaled(&Rat::from_integer(
        (spec.xi(a) as i64 * spec.xi(b) as i64).into(),
    ));
    if sgn == 0 {
        coef = coef.neg();
    }
    let mut m = GradedMatrix::zero(spec.grading());
    m.add_to(b, a, &RatFunc::one());
    m.add_to(spec.bar(a), spec.bar(b), &coef);
    Ok(m)
}

/// `sigma_hat` from the closed form: `q^{-h_{w_a}} sigma_tilde[b,a]`.
pub fn sigma_hat_closed(spec: &BasisSpec, b: usize, a: usize) -> Result<GradedMatrix, LaxError> {
    let st = sigma_tilde_closed(spec, b, a)?;
    let qh = q_weight_diag(spec, &spec.weight(a).neg()).expect("index weights are integral");
    Ok(qh.mul(&st))
}

/// Graded conjugation on a single-site matrix: each entry `v E^a_b` maps to
/// `(-1)^{[a]([a]+[b])} v E^b_a`; the scalar ring is fixed pointwise.
pub fn graded_dagger(x: &GradedMatrix) -> GradedMatrix {
    let g = x.grading().to_vec();
    let mut out = GradedMatrix::zero(g.clone());
    for (a, b, v) in x.entries() {
        let sgn = (g[a] * ((g[a] + g[b]) % 2)) % 2;
        let w = if sgn == 1 { v.neg() } else { v.clone() };
        out.add_to(b, a, &w);
    }
    out
}

/// Lower-triangular partner entries: `sigma_hat[a,b] = (-1)^{[b]([a]+[b])}
/// dagger(sigma_hat[b,a])` for `weight(b) > weight(a)`.
pub fn sigma_opposite(
    spec: &BasisSpec,
    sigma_ba: &GradedMatrix,
    b: usize,
    a: usize,
) -> GradedMatrix {
    let d = graded_dagger(sigma_ba);
    let sgn = (spec.parity(b) * ((spec.parity(a) + spec.parity(b)) % 2)) % 2;
    if sgn == 1 {
        d.neg()
    } else {
        d
    }
}

/// Convenience: vector-representation table for `(m, n)`, seeded and
/// completed.
pub fn vector_sigma_table(spec: &BasisSpec) -> Result<SigmaTable, LaxError> {
    let gens = crate::vecrep::simple_generators(spec);
    extend_sigma_table(seed_sigma_table(spec, &gens))
}
