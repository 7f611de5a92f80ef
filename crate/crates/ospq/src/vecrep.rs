//! The vector representation: sparse graded matrices, the simple
//! generators `e_a`, `f_a`, `h_a`, Cartan–Weyl matrices, diagonal weight
//! operators `q^{h_w}`, and the graded commutator.

use crate::qring::{Rat, RatFunc};
use crate::rootdata::{rat_to_i64, BasisSpec, RootKind, SimpleRoot, Weight};
use crate::scalar::Scalar;
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VecrepError {
    /// The graded commutator is only defined for parity-homogeneous inputs.
    #[error("matrix is not parity-homogeneous")]
    NotHomogeneous,
    /// `q^{h_w}` needs every pairing `(w, eps_x)` to be a half-integer.
    #[error("weight pairing is not a half-integer multiple of q")]
    NonHalfIntegerPairing,
}

/// Row-parallel multiplication kicks in above this dimension.
const PAR_DIM: usize = 192;

/// Sparse square matrix over a scalar ring on a graded space. The grading
/// vector travels with the matrix so Koszul signs are always available.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix<T: Scalar = RatFunc> {
    dim: usize,
    grading: Vec<u8>,
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Scalar> GradedMatrix<T> {
    pub fn zero(grading: Vec<u8>) -> Self {
        let dim = grading.len();
        GradedMatrix {
            dim,
            grading,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(grading: Vec<u8>) -> Self {
        let mut m = GradedMatrix::zero(grading);
        for i in 0..m.dim {
            m.rows[i].insert(i, T::one());
        }
        m
    }

    /// Single-entry matrix `v * E^r_c`.
    pub fn elementary(grading: Vec<u8>, r: usize, c: usize, v: T) -> Self {
        let mut m = GradedMatrix::zero(grading);
        m.set(r, c, v);
        m
    }

    pub fn diagonal(grading: Vec<u8>, entries: Vec<T>) -> Self {
        let mut m = GradedMatrix::zero(grading);
        for (i, v) in entries.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> &[u8] {
        &self.grading
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&T> {
        self.rows[r].get(&c)
    }

    /// Entry with zeros materialised.
    pub fn at(&self, r: usize, c: usize) -> T {
        self.get(r, c).cloned().unwrap_or_else(T::zero)
    }

    /// Insert, dropping explicit zeros.
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &T) {
        if v.is_zero() {
            return;
        }
        let cur = self.at(r, c);
        self.set(r, c, cur.add(v));
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn add(&self, o: &GradedMatrix<T>) -> GradedMatrix<T> {
        assert_eq!(self.dim, o.dim);
        let mut out = self.clone();
        for (r, c, v) in o.entries() {
            out.add_to(r, c, v);
        }
        out
    }

    pub fn sub(&self, o: &GradedMatrix<T>) -> GradedMatrix<T> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> GradedMatrix<T> {
        let mut out = GradedMatrix::zero(self.grading.clone());
        for (r, c, v) in self.entries() {
            out.set(r, c, v.neg());
        }
        out
    }

    pub fn scale(&self, s: &T) -> GradedMatrix<T> {
        let mut out = GradedMatrix::zero(self.grading.clone());
        if s.is_zero() {
            return out;
        }
        for (r, c, v) in self.entries() {
            out.set(r, c, v.mul(s));
        }
        out
    }

    pub fn mul(&self, o: &GradedMatrix<T>) -> GradedMatrix<T> {
        assert_eq!(self.dim, o.dim);
        let mul_row = |row: &BTreeMap<usize, T>| -> BTreeMap<usize, T> {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, v) in row {
                for (c, w) in &o.rows[*k] {
                    let prod = v.mul(w);
                    if prod.is_zero() {
                        continue;
                    }
                    match acc.get_mut(c) {
                        Some(cur) => {
                            let sum = cur.add(&prod);
                            if sum.is_zero() {
                                acc.remove(c);
                            } else {
                                *cur = sum;
                            }
                        }
                        None => {
                            acc.insert(*c, prod);
                        }
                    }
                }
            }
            acc
        };
        let rows: Vec<BTreeMap<usize, T>> = if self.dim >= PAR_DIM {
            self.rows.par_iter().map(mul_row).collect()
        } else {
            self.rows.iter().map(mul_row).collect()
        };
        GradedMatrix {
            dim: self.dim,
            grading: self.grading.clone(),
            rows,
        }
    }

    /// Parity of a homogeneous matrix: the common value of
    /// `grading[r] + grading[c]` over nonzero entries (0 for the zero
    /// matrix).
    pub fn parity(&self) -> Result<u8, VecrepError> {
        let mut par: Option<u8> = None;
        for (r, c, _) in self.entries() {
            let p = (self.grading[r] + self.grading[c]) % 2;
            match par {
                None => par = Some(p),
                Some(q) if q == p => {}
                _ => return Err(VecrepError::NotHomogeneous),
            }
        }
        Ok(par.unwrap_or(0))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> GradedMatrix<U> {
        let mut out = GradedMatrix::zero(self.grading.clone());
        for (r, c, v) in self.entries() {
            out.set(r, c, f(v));
        }
        out
    }

    /// First nonzero entry of `self - o`, for failure reports.
    pub fn first_difference(&self, o: &GradedMatrix<T>) -> Option<(usize, usize, T, T)> {
        let diff = self.sub(o);
        let loc = diff.entries().next().map(|(r, c, _)| (r, c));
        loc.map(|(r, c)| (r, c, self.at(r, c), o.at(r, c)))
    }
}

impl GradedMatrix<RatFunc> {
    /// Evaluate every entry at a rational `s` value.
    pub fn eval(&self, s: &Rat) -> Result<GradedMatrix<Rat>, crate::qring::QringError> {
        let mut out = GradedMatrix::zero(self.grading.clone());
        for (r, c, v) in self.entries() {
            out.set(r, c, crate::qring::evaluate_at(v, s)?);
        }
        Ok(out)
    }
}

/// One simple-root triple in the vector representation. The Cartan element
/// is kept as its integer eigenvalue vector; every use exponentiates it, so
/// `q^{t h/2}` diagonals are the only matrices ever formed from it.
#[derive(Clone, Debug)]
pub struct SimpleGen {
    pub root: SimpleRoot,
    pub e: GradedMatrix,
    pub f: GradedMatrix,
    pub h: Vec<i64>,
}

fn rf_int(v: i64) -> RatFunc {
    RatFunc::constant(Rat::from_integer(v.into()))
}

/// `diag(s^{h_x * half_steps})`, i.e. `q^{h * half_steps / 2}`.
pub fn q_h_diag(spec: &BasisSpec, h: &[i64], half_steps: i64) -> GradedMatrix {
    GradedMatrix::diagonal(
        spec.grading(),
        h.iter().map(|t| RatFunc::s_pow(t * half_steps)).collect(),
    )
}

/// Cartan–Weyl matrix
/// `sigma^a_b = E^a_b - (-1)^{[a]([a]+[b])} xi_a xi_b E^{bar b}_{bar a}`.
pub fn cartan_weyl(spec: &BasisSpec, a: usize, b: usize) -> GradedMatrix {
    let mut m = GradedMatrix::zero(spec.grading());
    m.add_to(a, b, &RatFunc::one());
    let pa = spec.parity(a);
    let pb = spec.parity(b);
    let sgn = if (pa * ((pa + pb) % 2)) % 2 == 1 {
        -1
    } else {
        1
    };
    let coef = rf_int(-(sgn as i64 * spec.xi(a) as i64 * spec.xi(b) as i64));
    m.add_to(spec.bar(b), spec.bar(a), &coef);
    m
}

/// Diagonal weight operator `q^{h_w} = diag(q^{(w, eps_x)})`.
pub fn q_weight_diag(spec: &BasisSpec, w: &Weight) -> Result<GradedMatrix, VecrepError> {
    let mut entries = Vec::with_capacity(spec.dim());
    for x in 0..spec.dim() {
        let p = crate::rootdata::bilinear(w, spec.weight(x))
            .expect("weights share the basis of the same (l, k)");
        let two_p = p * Rat::from_integer(2.into());
        if !two_p.is_integer() {
            return Err(VecrepError::NonHalfIntegerPairing);
        }
        entries.push(RatFunc::s_pow(rat_to_i64(&two_p)));
    }
    Ok(GradedMatrix::diagonal(spec.grading(), entries))
}

/// Graded commutator `[x, y] = xy - (-1)^{[x][y]} yx` for homogeneous
/// arguments.
pub fn graded_commutator<T: Scalar>(
    x: &GradedMatrix<T>,
    y: &GradedMatrix<T>,
) -> Result<GradedMatrix<T>, VecrepError> {
    let px = x.parity()?;
    let py = y.parity()?;
    let xy = x.mul(y);
    let yx = y.mul(x);
    Ok(if px * py % 2 == 1 {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    })
}

/// The simple generators of `U_q[osp(m|n)]` in the vector representation,
/// one triple per simple root, ordered as in `BasisSpec::simple_roots`.
pub fn simple_generators(spec: &BasisSpec) -> Vec<SimpleGen> {
    use crate::rootdata::IndexLabel::{Even, Odd};
    let (m, n, l, k) = (spec.m, spec.n, spec.l, spec.k);
    let pos = |lab| spec.pos_of_index(lab);
    let one = RatFunc::one();
    let mut out = Vec::new();
    for root in spec.simple_roots() {
        let mut e = GradedMatrix::zero(spec.grading());
        let mut f = GradedMatrix::zero(spec.grading());
        let mut h = vec![0i64; spec.dim()];
        match root.kind {
            RootKind::EvenChain(i) => {
                // e_i = E^i_{i+1} - E^{bar(i+1)}_{bar i}
                e.add_to(pos(Even(i)), pos(Even(i + 1)), &one);
                e.add_to(pos(Even(m - i)), pos(Even(m + 1 - i)), &rf_int(-1));
                f.add_to(pos(Even(i + 1)), pos(Even(i)), &one);
                f.add_to(pos(Even(m + 1 - i)), pos(Even(m - i)), &rf_int(-1));
                h[pos(Even(i))] = 1;
                h[pos(Even(i + 1))] = -1;
                h[pos(Even(m - i))] = 1;
                h[pos(Even(m + 1 - i))] = -1;
            }
            RootKind::EvenTail if m % 2 == 0 => {
                // e_l = E^{l-1}_{bar l} - E^l_{bar(l-1)}
                e.add_to(pos(Even(l - 1)), pos(Even(l + 1)), &one);
                e.add_to(pos(Even(l)), pos(Even(l + 2)), &rf_int(-1));
                f.add_to(pos(Even(l + 1)), pos(Even(l - 1)), &one);
                f.add_to(pos(Even(l + 2)), pos(Even(l)), &rf_int(-1));
                h[pos(Even(l))] += 1;
                h[pos(Even(l + 1))] += -1;
                h[pos(Even(l - 1))] += 1;
                h[pos(Even(l + 2))] += -1;
            }
            RootKind::EvenTail => {
                // e_l = E^l_{l+1} - E^{l+1}_{bar l}
                e.add_to(pos(Even(l)), pos(Even(l + 1)), &one);
                e.add_to(pos(Even(l + 1)), pos(Even(l + 2)), &rf_int(-1));
                f.add_to(pos(Even(l + 1)), pos(Even(l)), &one);
                f.add_to(pos(Even(l + 2)), pos(Even(l + 1)), &rf_int(-1));
                h[pos(Even(l))] = 1;
                h[pos(Even(l + 2))] = -1;
            }
            RootKind::OddChain(mu) => {
                // e_mu = E^mu_{mu+1} + E^{bar(mu+1)}_{bar mu}
                e.add_to(pos(Odd(mu)), pos(Odd(mu + 1)), &one);
                e.add_to(pos(Odd(n - mu)), pos(Odd(n + 1 - mu)), &one);
                f.add_to(pos(Odd(mu + 1)), pos(Odd(mu)), &rf_int(-1));
                f.add_to(pos(Odd(n + 1 - mu)), pos(Odd(n - mu)), &rf_int(-1));
                h[pos(Odd(mu + 1))] = 1;
                h[pos(Odd(mu))] = -1;
                h[pos(Odd(n + 1 - mu))] = 1;
                h[pos(Odd(n - mu))] = -1;
            }
            RootKind::Crossing => {
                // e_s = E^{mu=k}_{i=1} + (-1)^k E^{bar(i=1)}_{bar(mu=k)}
                let sgn = if k % 2 == 0 { 1 } else { -1 };
                e.add_to(pos(Odd(k)), pos(Even(1)), &one);
                e.add_to(pos(Even(m)), pos(Odd(k + 1)), &rf_int(sgn));
                f.add_to(pos(Even(1)), pos(Odd(k)), &rf_int(-1));
                f.add_to(pos(Odd(k + 1)), pos(Even(m)), &rf_int(sgn));
                h[pos(Even(m))] = 1;
                h[pos(Even(1))] = -1;
                h[pos(Odd(k + 1))] = 1;
                h[pos(Odd(k))] = -1;
            }
        }
        out.push(SimpleGen {
            root: root.clone(),
            e,
            f,
            h,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::LaurentPoly;
    use crate::rootdata::build_basis;

    fn rf(p: LaurentPoly) -> RatFunc {
        RatFunc::from(p)
    }

    fn find<'a>(gens: &'a [SimpleGen], name: &str) -> &'a SimpleGen {
        gens.iter().find(|g| g.root.name() == name).unwrap()
    }

    #[test]
    fn generators_3_2() {
        let spec = build_basis(3, 2).unwrap();
        let gens = simple_generators(&spec);
        assert_eq!(gens.len(), 2);

        // e_l = E_{p2,p3} - E_{p3,p4} (0-based rows 1,2 / 2,3)
        let gl = find(&gens, "al");
        let mut want = GradedMatrix::zero(spec.grading());
        want.set(1, 2, RatFunc::one());
        want.set(
            2,
            3,
            rf(LaurentPoly::constant(Rat::from_integer((-1).into()))),
        );
        assert_eq!(gl.e, want);
        assert_eq!(gl.h, vec![0, 1, 0, -1, 0]);

        // e_s = E_{p1,p2} - E_{p4,p5}
        let gs = find(&gens, "as");
        let mut want = GradedMatrix::zero(spec.grading());
        want.set(0, 1, RatFunc::one());
        want.set(
            3,
            4,
            rf(LaurentPoly::constant(Rat::from_integer((-1).into()))),
        );
        assert_eq!(gs.e, want);
        assert_eq!(gs.h, vec![-1, -1, 0, 1, 1]);
    }

    #[test]
    fn generators_3_4_odd_chain() {
        // e_{mu=1} = E^{mu1}_{mu2} + E^{bar(mu2)}_{bar(mu1)}
        let spec = build_basis(3, 4).unwrap();
        let gens = simple_generators(&spec);
        let g = find(&gens, "b1");
        let mut want = GradedMatrix::zero(spec.grading());
        want.set(0, 1, RatFunc::one()); // d1 -> row of mu=1, col of mu=2
        want.set(5, 6, RatFunc::one()); // bar(mu=2) = mu=3 row, bar(mu=1) = mu=4 col
        assert_eq!(g.e, want);
    }

    #[test]
    fn cartan_weyl_examples() {
        let spec = build_basis(3, 2).unwrap();
        // sigma^{i=1}_{i=1} = diag(0,1,0,-1,0)
        let e1 = spec.pos_of_label("e1").unwrap();
        let m = cartan_weyl(&spec, e1, e1);
        let mut want = GradedMatrix::zero(spec.grading());
        want.set(1, 1, RatFunc::one());
        want.set(3, 3, RatFunc::constant(Rat::from_integer((-1).into())));
        assert_eq!(m, want);
        // diagonal sigma^a_a = e^a_a - e^{bar a}_{bar a} for every index
        for a in 0..spec.dim() {
            let got = cartan_weyl(&spec, a, a);
            let mut want = GradedMatrix::zero(spec.grading());
            want.add_to(a, a, &RatFunc::one());
            want.add_to(
                spec.bar(a),
                spec.bar(a),
                &RatFunc::constant(Rat::from_integer((-1).into())),
            );
            assert_eq!(got, want);
        }
        // self-bar index: sigma vanishes
        let z = spec.zero_pos().unwrap();
        assert!(cartan_weyl(&spec, z, z).is_zero());
    }

    #[test]
    fn q_weight_diag_examples() {
        let spec = build_basis(3, 2).unwrap();
        let e1 = Weight::basis_eps(1, 1, 1);
        let d = q_weight_diag(&spec, &e1).unwrap();
        let want: Vec<RatFunc> = [0, 2, 0, -2, 0]
            .iter()
            .map(|&e| RatFunc::s_pow(e))
            .collect();
        assert_eq!(d, GradedMatrix::diagonal(spec.grading(), want));

        let zero = Weight::zero(1, 1);
        assert_eq!(
            q_weight_diag(&spec, &zero).unwrap(),
            GradedMatrix::identity(spec.grading())
        );

        let two_rho = spec.rho().doubled();
        let d = q_weight_diag(&spec, &two_rho).unwrap();
        let want: Vec<RatFunc> = [2, 2, 0, -2, -2]
            .iter()
            .map(|&e| RatFunc::s_pow(e))
            .collect();
        assert_eq!(d, GradedMatrix::diagonal(spec.grading(), want));
    }

    #[test]
    fn commutator_examples() {
        let spec = build_basis(3, 2).unwrap();
        let gens = simple_generators(&spec);
        let gl = find(&gens, "al");
        let gs = find(&gens, "as");

        // diagonal Cartan matrices commute
        let hl = q_h_diag(&spec, &gl.h, 2);
        let hs = q_h_diag(&spec, &gs.h, 2);
        assert!(graded_commutator(&hl, &hs).unwrap().is_zero());

        // [e_s, f_s] = diag(-1,-1,0,1,1): both odd, so the bracket is an
        // anticommutator; equals [h_s]_q on the diagonal.
        let br = graded_commutator(&gs.e, &gs.f).unwrap();
        let want = GradedMatrix::diagonal(
            spec.grading(),
            gs.h.iter()
                .map(|&t| RatFunc::from(LaurentPoly::q_int(t)))
                .collect(),
        );
        assert_eq!(br, want);

        // [x, x] = 2x^2 = 0 for odd x with x^2 = 0
        let sq = gs.e.mul(&gs.e);
        assert!(sq.is_zero());
        assert!(graded_commutator(&gs.e, &gs.e).unwrap().is_zero());

        // inhomogeneous input is rejected
        let mixed = gs.e.add(&hl);
        assert!(matches!(
            graded_commutator(&mixed, &gs.e),
            Err(VecrepError::NotHomogeneous)
        ));
    }

    #[test]
    fn generators_agree_with_cartan_weyl() {
        // e_i = sigma^i_{i+1}, f_i = sigma^{i+1}_i, e_mu = sigma^mu_{mu+1},
        // f_mu = -sigma^{mu+1}_mu, e_s = sigma^{mu=k}_{i=1},
        // f_s = -sigma^{i=1}_{mu=k}, and the tail pair per the parity of m.
        use crate::rootdata::IndexLabel::{Even, Odd};
        for (m, n) in [(3, 2), (4, 2), (5, 4), (6, 4)] {
            let spec = build_basis(m, n).unwrap();
            let (l, k) = (spec.l, spec.k);
            let p = |lab| spec.pos_of_index(lab);
            for g in simple_generators(&spec) {
                let (e_want, f_want) = match g.root.kind {
                    crate::rootdata::RootKind::EvenChain(i) => (
                        cartan_weyl(&spec, p(Even(i)), p(Even(i + 1))),
                        cartan_weyl(&spec, p(Even(i + 1)), p(Even(i))),
                    ),
                    crate::rootdata::RootKind::EvenTail if m % 2 == 0 => (
                        cartan_weyl(&spec, p(Even(l - 1)), p(Even(l + 1))),
                        cartan_weyl(&spec, p(Even(l + 1)), p(Even(l - 1))),
                    ),
                    crate::rootdata::RootKind::EvenTail => (
                        cartan_weyl(&spec, p(Even(l)), p(Even(l + 1))),
                        cartan_weyl(&spec, p(Even(l + 1)), p(Even(l))),
                    ),
                    crate::rootdata::RootKind::OddChain(mu) => (
                        cartan_weyl(&spec, p(Odd(mu)), p(Odd(mu + 1))),
                        cartan_weyl(&spec, p(Odd(mu + 1)), p(Odd(mu))).neg(),
                    ),
                    crate::rootdata::RootKind::Crossing => (
                        cartan_weyl(&spec, p(Odd(k)), p(Even(1))),
                        cartan_weyl(&spec, p(Even(1)), p(Odd(k))).neg(),
                    ),
                };
                assert_eq!(g.e, e_want, "({m},{n}) e {}", g.root.name());
                assert_eq!(g.f, f_want, "({m},{n}) f {}", g.root.name());
            }
        }
    }

    #[test]
    fn weight_homogeneity_of_generators() {
        // every e_a raises the weight by its root: for each nonzero (r,c),
        // weight(r) - weight(c) equals the root.
        for (m, n) in [(3, 2), (4, 2), (5, 4)] {
            let spec = build_basis(m, n).unwrap();
            for g in simple_generators(&spec) {
                for (r, c, _) in g.e.entries() {
                    assert_eq!(spec.weight(r).sub(spec.weight(c)), g.root.weight);
                }
                for (r, c, _) in g.f.entries() {
                    assert_eq!(spec.weight(r).sub(spec.weight(c)), g.root.weight.neg());
                }
            }
        }
    }
}
