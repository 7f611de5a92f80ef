//! Root data for `U_q[osp(m|n)]`: the ordered graded index set of the
//! vector module, gradings, bar involution, the `xi` sign vector, weights,
//! the invariant bilinear form, the graded half-sum of positive roots and
//! the distinguished simple-root system.
//!
//! The `m + n` basis indices are laid out in strictly descending weight
//! order
//!
//! ```text
//!   d_1 > ... > d_k > e_1 > ... > e_l > (0) > -e_l > ... > -e_1 > -d_k > ... > -d_1
//! ```
//!
//! (the zero weight occurs exactly when `m` is odd). With this layout
//! "weight of `b` exceeds weight of `a`" is simply a position comparison,
//! and the Perelomov–Popov matrix of the Casimir machinery is literally
//! lower triangular.

use crate::qring::Rat;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    /// The construction requires `m > 2` and even `n >= 2`.
    #[error("invalid rank: m={m}, n={n} (need m > 2 and even n >= 2)")]
    InvalidRank { m: usize, n: usize },
    #[error("weights live over different (l, k) bases")]
    DimensionMismatch,
}

/// Weight vector over the basis `(e_1..e_l, d_1..d_k)` with exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    pub eps: Vec<Rat>,
    pub delta: Vec<Rat>,
}

impl Weight {
    pub fn zero(l: usize, k: usize) -> Self {
        Weight {
            eps: vec![Rat::zero(); l],
            delta: vec![Rat::zero(); k],
        }
    }

    /// `e_i` (1-based).
    pub fn basis_eps(l: usize, k: usize, i: usize) -> Self {
        let mut w = Weight::zero(l, k);
        w.eps[i - 1] = Rat::one();
        w
    }

    /// `d_mu` (1-based).
    pub fn basis_delta(l: usize, k: usize, mu: usize) -> Self {
        let mut w = Weight::zero(l, k);
        w.delta[mu - 1] = Rat::one();
        w
    }

    pub fn is_zero(&self) -> bool {
        self.eps.iter().all(Zero::is_zero) && self.delta.iter().all(Zero::is_zero)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight {
            eps: self.eps.iter().zip(&o.eps).map(|(a, b)| a + b).collect(),
            delta: self
                .delta
                .iter()
                .zip(&o.delta)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Weight {
        Weight {
            eps: self.eps.iter().map(|a| -a).collect(),
            delta: self.delta.iter().map(|a| -a).collect(),
        }
    }

    pub fn scaled(&self, c: &Rat) -> Weight {
        Weight {
            eps: self.eps.iter().map(|a| a * c).collect(),
            delta: self.delta.iter().map(|a| a * c).collect(),
        }
    }

    pub fn doubled(&self) -> Weight {
        self.scaled(&Rat::from_integer(2.into()))
    }
}

/// Invariant bilinear form: `+1` on the `e` part, `-1` on the `d` part.
pub fn bilinear(u: &Weight, v: &Weight) -> Result<Rat, RootError> {
    if u.eps.len() != v.eps.len() || u.delta.len() != v.delta.len() {
        return Err(RootError::DimensionMismatch);
    }
    let mut acc = Rat::zero();
    for (a, b) in u.eps.iter().zip(&v.eps) {
        acc += a * b;
    }
    for (a, b) in u.delta.iter().zip(&v.delta) {
        acc -= a * b;
    }
    Ok(acc)
}

/// Original index label in the `gl(m|n)` convention: even indices `1..=m`,
/// odd indices `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexLabel {
    Even(usize),
    Odd(usize),
}

#[derive(Clone, Debug)]
pub struct IndexInfo {
    pub label: IndexLabel,
    pub parity: u8,
    pub xi: i8,
    pub weight: Weight,
}

/// The four families of distinguished simple roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    /// `e_i - e_{i+1}` for `1 <= i < l`.
    EvenChain(usize),
    /// `e_{l-1} + e_l` (even `m`) or `e_l` (odd `m`).
    EvenTail,
    /// `d_mu - d_{mu+1}` for `1 <= mu < k`.
    OddChain(usize),
    /// `d_k - e_1`, the odd isotropic root.
    Crossing,
}

#[derive(Clone, Debug)]
pub struct SimpleRoot {
    pub kind: RootKind,
    pub weight: Weight,
    /// Parity of the corresponding generators (1 only for the crossing root).
    pub parity: u8,
    /// Canonical index pair `(b, a)` (positions) with
    /// `weight(b) - weight(a)` equal to this root.
    pub pair: (usize, usize),
}

impl SimpleRoot {
    pub fn name(&self) -> String {
        match self.kind {
            RootKind::EvenChain(i) => format!("a{i}"),
            RootKind::EvenTail => "al".to_string(),
            RootKind::OddChain(mu) => format!("b{mu}"),
            RootKind::Crossing => "as".to_string(),
        }
    }
}

/// Complete root datum for one `(m, n)`.
#[derive(Clone, Debug)]
pub struct BasisSpec {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    pub k: usize,
    indices: Vec<IndexInfo>,
    bar: Vec<usize>,
    rho: Weight,
    simple: Vec<SimpleRoot>,
    cartan: Vec<Vec<i64>>,
}

/// Build the basis spec; the rank constraints `m > 2`, `n` even, `n >= 2`
/// are enforced up front.
pub fn build_basis(m: usize, n: usize) -> Result<BasisSpec, RootError> {
    if m <= 2 || n < 2 || n % 2 != 0 {
        return Err(RootError::InvalidRank { m, n });
    }
    let l = m / 2;
    let k = n / 2;
    let mut labels = Vec::with_capacity(m + n);
    labels.extend((1..=k).map(IndexLabel::Odd));
    labels.extend((1..=m).map(IndexLabel::Even));
    labels.extend((k + 1..=n).map(IndexLabel::Odd));

    let weight_of = |lab: IndexLabel| -> Weight {
        match lab {
            IndexLabel::Even(i) => {
                if i <= l {
                    Weight::basis_eps(l, k, i)
                } else if m % 2 == 1 && i == l + 1 {
                    Weight::zero(l, k)
                } else {
                    Weight::basis_eps(l, k, m + 1 - i).neg()
                }
            }
            IndexLabel::Odd(mu) => {
                if mu <= k {
                    Weight::basis_delta(l, k, mu)
                } else {
                    Weight::basis_delta(l, k, n + 1 - mu).neg()
                }
            }
        }
    };

    let indices: Vec<IndexInfo> = labels
        .iter()
        .map(|&lab| IndexInfo {
            label: lab,
            parity: match lab {
                IndexLabel::Even(_) => 0,
                IndexLabel::Odd(_) => 1,
            },
            xi: match lab {
                IndexLabel::Even(_) => 1,
                IndexLabel::Odd(mu) => {
                    if mu % 2 == 0 {
                        1
                    } else {
                        -1
                    }
                }
            },
            weight: weight_of(lab),
        })
        .collect();

    let pos_of = |lab: IndexLabel| labels.iter().position(|&x| x == lab).unwrap();
    let bar: Vec<usize> = labels
        .iter()
        .map(|&lab| match lab {
            IndexLabel::Even(i) => pos_of(IndexLabel::Even(m + 1 - i)),
            IndexLabel::Odd(mu) => pos_of(IndexLabel::Odd(n + 1 - mu)),
        })
        .collect();

    // rho = 1/2 sum (m - 2i) e_i + 1/2 sum (n - m + 2 - 2mu) d_mu
    let mut rho = Weight::zero(l, k);
    for i in 1..=l {
        rho.eps[i - 1] = Rat::new((m as i64 - 2 * i as i64).into(), 2.into());
    }
    for mu in 1..=k {
        rho.delta[mu - 1] = Rat::new((n as i64 - m as i64 + 2 - 2 * mu as i64).into(), 2.into());
    }

    let mut simple = Vec::new();
    for i in 1..l {
        simple.push(SimpleRoot {
            kind: RootKind::EvenChain(i),
            weight: Weight::basis_eps(l, k, i).sub(&Weight::basis_eps(l, k, i + 1)),
            parity: 0,
            pair: (pos_of(IndexLabel::Even(i)), pos_of(IndexLabel::Even(i + 1))),
        });
    }
    if m % 2 == 0 {
        simple.push(SimpleRoot {
            kind: RootKind::EvenTail,
            weight: Weight::basis_eps(l, k, l - 1).add(&Weight::basis_eps(l, k, l)),
            parity: 0,
            pair: (
                pos_of(IndexLabel::Even(l - 1)),
                pos_of(IndexLabel::Even(l + 1)),
            ),
        });
    } else {
        simple.push(SimpleRoot {
            kind: RootKind::EvenTail,
            weight: Weight::basis_eps(l, k, l),
            parity: 0,
            pair: (pos_of(IndexLabel::Even(l)), pos_of(IndexLabel::Even(l + 1))),
        });
    }
    for mu in 1..k {
        simple.push(SimpleRoot {
            kind: RootKind::OddChain(mu),
            weight: Weight::basis_delta(l, k, mu).sub(&Weight::basis_delta(l, k, mu + 1)),
            parity: 0,
            pair: (pos_of(IndexLabel::Odd(mu)), pos_of(IndexLabel::Odd(mu + 1))),
        });
    }
    simple.push(SimpleRoot {
        kind: RootKind::Crossing,
        weight: Weight::basis_delta(l, k, k).sub(&Weight::basis_eps(l, k, 1)),
        parity: 1,
        pair: (pos_of(IndexLabel::Odd(k)), pos_of(IndexLabel::Even(1))),
    });

    // Cartan integers. Rows of non-isotropic roots use 2(b,c)/(b,b); the
    // isotropic row is normalised so its off-diagonal entries are
    // nonpositive, which is the convention the Serre exponents need.
    let nr = simple.len();
    let mut cartan = vec![vec![0i64; nr]; nr];
    for (bi, b) in simple.iter().enumerate() {
        let bb = bilinear(&b.weight, &b.weight).unwrap();
        for (ci, c) in simple.iter().enumerate() {
            let bc = bilinear(&b.weight, &c.weight).unwrap();
            let v = if !bb.is_zero() {
                Rat::from_integer(2.into()) * bc / bb.clone()
            } else if bi == ci {
                Rat::zero()
            } else {
                -bc.abs()
            };
            assert!(v.is_integer(), "Cartan integer must be integral");
            cartan[bi][ci] = rat_to_i64(&v);
        }
    }

    Ok(BasisSpec {
        m,
        n,
        l,
        k,
        indices,
        bar,
        rho,
        simple,
        cartan,
    })
}

/// Convert an exactly integral rational to `i64` (panics otherwise); the
/// exponent arithmetic throughout the crate relies on it.
pub fn rat_to_i64(r: &Rat) -> i64 {
    assert!(r.is_integer(), "expected integer rational, got {r}");
    let t: num_bigint::BigInt = r.to_integer();
    i64::try_from(t).expect("exponent fits in i64")
}

impl BasisSpec {
    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    pub fn index(&self, pos: usize) -> &IndexInfo {
        &self.indices[pos]
    }

    pub fn parity(&self, pos: usize) -> u8 {
        self.indices[pos].parity
    }

    pub fn weight(&self, pos: usize) -> &Weight {
        &self.indices[pos].weight
    }

    pub fn xi(&self, pos: usize) -> i8 {
        self.indices[pos].xi
    }

    pub fn bar(&self, pos: usize) -> usize {
        self.bar[pos]
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn grading(&self) -> Vec<u8> {
        self.indices.iter().map(|i| i.parity).collect()
    }

    pub fn simple_roots(&self) -> &[SimpleRoot] {
        &self.simple
    }

    pub fn cartan(&self, b: usize, c: usize) -> i64 {
        self.cartan[b][c]
    }

    /// Position of the zero-weight index (odd `m` only).
    pub fn zero_pos(&self) -> Option<usize> {
        (self.m % 2 == 1).then(|| self.k + self.l)
    }

    /// Total order on indices; `Greater` means strictly larger weight.
    pub fn weight_order(&self, a: usize, b: usize) -> Ordering {
        b.cmp(&a)
    }

    /// `theta(x, y)` is true iff `weight(x) > weight(y)`.
    pub fn theta(&self, x: usize, y: usize) -> bool {
        x < y
    }

    /// Human-readable index label: `d1`, `e1`, `0`, `-e1`, `-d1`, ...
    pub fn label(&self, pos: usize) -> String {
        match self.indices[pos].label {
            IndexLabel::Even(i) => {
                if i <= self.l {
                    format!("e{i}")
                } else if self.m % 2 == 1 && i == self.l + 1 {
                    "0".to_string()
                } else {
                    format!("-e{}", self.m + 1 - i)
                }
            }
            IndexLabel::Odd(mu) => {
                if mu <= self.k {
                    format!("d{mu}")
                } else {
                    format!("-d{}", self.n + 1 - mu)
                }
            }
        }
    }

    pub fn pos_of_label(&self, label: &str) -> Option<usize> {
        (0..self.dim()).find(|&p| self.label(p) == label)
    }

    pub fn pos_of_index(&self, label: IndexLabel) -> usize {
        self.indices.iter().position(|i| i.label == label).unwrap()
    }
}

/// Graded half-sum of positive roots.
pub fn rho_weight(spec: &BasisSpec) -> Weight {
    spec.rho.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rat {
        Rat::new(1.into(), 2.into())
    }

    #[test]
    fn basis_3_2() {
        let spec = build_basis(3, 2).unwrap();
        assert_eq!(spec.dim(), 5);
        assert_eq!((spec.l, spec.k), (1, 1));
        let labels: Vec<String> = (0..5).map(|p| spec.label(p)).collect();
        assert_eq!(labels, ["d1", "e1", "0", "-e1", "-d1"]);
        assert_eq!(spec.grading(), vec![1, 0, 0, 0, 1]);
        let xi: Vec<i8> = (0..5).map(|p| spec.xi(p)).collect();
        assert_eq!(xi, vec![-1, 1, 1, 1, 1]);
        let bar: Vec<usize> = (0..5).map(|p| spec.bar(p)).collect();
        assert_eq!(bar, vec![4, 3, 2, 1, 0]);
        assert_eq!(spec.zero_pos(), Some(2));
    }

    #[test]
    fn basis_4_2() {
        let spec = build_basis(4, 2).unwrap();
        assert_eq!(spec.dim(), 6);
        assert_eq!((spec.l, spec.k), (2, 1));
        assert!(spec.zero_pos().is_none());
        assert!((0..6).all(|p| !spec.weight(p).is_zero()));
    }

    #[test]
    fn rank_rejection() {
        assert!(matches!(
            build_basis(2, 2),
            Err(RootError::InvalidRank { .. })
        ));
        assert!(matches!(
            build_basis(3, 3),
            Err(RootError::InvalidRank { .. })
        ));
        assert!(matches!(
            build_basis(3, 0),
            Err(RootError::InvalidRank { .. })
        ));
    }

    #[test]
    fn bilinear_form() {
        let e1 = Weight::basis_eps(1, 1, 1);
        let d1 = Weight::basis_delta(1, 1, 1);
        assert_eq!(bilinear(&e1, &e1).unwrap(), Rat::one());
        assert_eq!(bilinear(&d1, &d1).unwrap(), -Rat::one());
        assert_eq!(bilinear(&e1, &d1).unwrap(), Rat::zero());
        let short = Weight::basis_eps(2, 1, 1);
        assert!(matches!(
            bilinear(&e1, &short),
            Err(RootError::DimensionMismatch)
        ));
    }

    #[test]
    fn rho_values() {
        let spec = build_basis(3, 2).unwrap();
        let rho = rho_weight(&spec);
        assert_eq!(rho.eps, vec![half()]);
        assert_eq!(rho.delta, vec![-half()]);

        let spec = build_basis(4, 2).unwrap();
        let rho = rho_weight(&spec);
        assert_eq!(rho.eps, vec![Rat::one(), Rat::zero()]);
        assert_eq!(rho.delta, vec![-Rat::one()]);
    }

    #[test]
    fn rho_pairs_with_simple_roots() {
        // (rho, a) = (a, a)/2 for every simple root; zero for the isotropic one.
        for (m, n) in [(3, 2), (4, 2), (5, 2), (3, 4), (4, 4), (5, 4), (6, 4)] {
            let spec = build_basis(m, n).unwrap();
            for root in spec.simple_roots() {
                let ra = bilinear(spec.rho(), &root.weight).unwrap();
                let aa = bilinear(&root.weight, &root.weight).unwrap();
                assert_eq!(
                    ra,
                    aa.clone() / Rat::from_integer(2.into()),
                    "({m},{n}) {:?}",
                    root.kind
                );
                if aa.is_zero() {
                    assert!(ra.is_zero());
                }
            }
        }
    }

    #[test]
    fn quadratic_label_of_vector_weight() {
        // (d1, d1 + 2 rho) = m - n - 1 for all valid ranks.
        for (m, n) in [(3, 2), (4, 2), (5, 2), (3, 4), (4, 4), (5, 4)] {
            let spec = build_basis(m, n).unwrap();
            let d1 = Weight::basis_delta(spec.l, spec.k, 1);
            let v = bilinear(&d1, &d1.add(&spec.rho().doubled())).unwrap();
            assert_eq!(v, Rat::from_integer((m as i64 - n as i64 - 1).into()));
        }
    }

    #[test]
    fn order_examples() {
        let spec = build_basis(3, 2).unwrap();
        let d1 = spec.pos_of_label("d1").unwrap();
        let e1 = spec.pos_of_label("e1").unwrap();
        let me1 = spec.pos_of_label("-e1").unwrap();
        assert_eq!(spec.weight_order(d1, e1), Ordering::Greater);
        assert_eq!(spec.weight_order(e1, me1), Ordering::Greater);
        let z = spec.zero_pos().unwrap();
        assert_eq!(spec.weight_order(z, z), Ordering::Equal);
        assert!(spec.theta(d1, e1));
        assert!(!spec.theta(e1, d1));
    }

    #[test]
    fn bar_reverses_order() {
        for (m, n) in [(3, 2), (4, 2), (5, 4)] {
            let spec = build_basis(m, n).unwrap();
            for a in 0..spec.dim() {
                // weight(bar(a)) = -weight(a)
                assert_eq!(spec.weight(spec.bar(a)), &spec.weight(a).neg());
                assert_eq!(spec.bar(spec.bar(a)), a);
                for b in 0..spec.dim() {
                    assert_eq!(
                        spec.weight_order(a, b),
                        spec.weight_order(spec.bar(b), spec.bar(a))
                    );
                }
            }
        }
    }

    #[test]
    fn simple_roots_positive_and_consistent() {
        for (m, n) in [(3, 2), (4, 2), (5, 2), (3, 4), (4, 4), (6, 4)] {
            let spec = build_basis(m, n).unwrap();
            for root in spec.simple_roots() {
                let (b, a) = root.pair;
                assert!(
                    spec.theta(b, a),
                    "simple root must be positive in the order"
                );
                assert_eq!(spec.weight(b).sub(spec.weight(a)), root.weight);
            }
        }
    }

    #[test]
    fn cartan_off_diagonals_nonpositive() {
        for (m, n) in [(3, 2), (5, 2), (5, 4), (6, 4)] {
            let spec = build_basis(m, n).unwrap();
            let nr = spec.simple_roots().len();
            for b in 0..nr {
                for c in 0..nr {
                    if b != c {
                        assert!(spec.cartan(b, c) <= 0, "({m},{n}) a[{b}][{c}]");
                    }
                }
            }
        }
        // the B-type double bond at (5,2): row of the short tail root
        let spec = build_basis(5, 2).unwrap();
        let names: Vec<String> = spec.simple_roots().iter().map(|r| r.name()).collect();
        let tail = names.iter().position(|s| s == "al").unwrap();
        let chain = names.iter().position(|s| s == "a1").unwrap();
        assert_eq!(spec.cartan(tail, chain), -2);
        assert_eq!(spec.cartan(chain, tail), -1);
    }
}
