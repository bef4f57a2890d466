//! K-theory classes of vector bundles and the Chern calculus.
//!
//! A [`BundleClass`] is an integer (possibly negative, virtual) rank plus a
//! Chern character, a mixed-degree Chow class whose degree-0 part equals the
//! rank. Chern classes and characters are interconverted by Newton's
//! identities through the power sums `p_i = i!·ch_i`, which is also what
//! makes `c_i` of a virtual bundle well-defined.
//!
//! Symmetric powers use the symmetric-algebra generating identity
//! `Σ_d ch(Sym^d E) t^d = exp( Σ_{k≥1} (t^k/k)·ψ^k ch(E) )`
//! where the Adams operation `ψ^k` scales the degree-`i` part of `ch` by
//! `k^i`.

use std::sync::Arc;

use crate::qseries::Rational;

use super::partition::Partition;
use super::space::{same_space, ChowClass, Space, SpaceKind};

/// A virtual vector bundle: rank and Chern character.
#[derive(Clone, Debug)]
pub struct BundleClass {
    space: Arc<Space>,
    rank: i64,
    ch: ChowClass,
}

impl PartialEq for BundleClass {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && same_space(&self.space, &other.space) && self.ch == other.ch
    }
}

impl BundleClass {
    /// Wraps a rank and Chern character; the degree-0 part of `ch` must
    /// equal the rank.
    pub fn new(space: &Arc<Space>, rank: i64, ch: ChowClass) -> Self {
        assert!(same_space(&space_of(&ch), space), "ch on the wrong space");
        assert_eq!(
            ch.degree_part(0),
            ChowClass::one(space).scale(&Rational::from(rank)),
            "degree-0 part of ch must equal the rank"
        );
        BundleClass {
            space: Arc::clone(space),
            rank,
            ch,
        }
    }

    /// The trivial bundle of the given rank.
    pub fn trivial(space: &Arc<Space>, rank: i64) -> Self {
        BundleClass {
            space: Arc::clone(space),
            rank,
            ch: ChowClass::one(space).scale(&Rational::from(rank)),
        }
    }

    /// The line bundle with the given first Chern class: `ch = exp(c₁)`.
    pub fn line_bundle(c1: &ChowClass) -> Self {
        let space = Arc::clone(space_of_ref(c1));
        let ch = exp_class(c1);
        BundleClass { space, rank: 1, ch }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn ch(&self) -> &ChowClass {
        &self.ch
    }

    /// `ch_d`, the degree-`d` part of the Chern character.
    pub fn ch_part(&self, d: u32) -> ChowClass {
        self.ch.degree_part(d)
    }

    /// First Chern class (equals `ch₁`).
    pub fn c1(&self) -> ChowClass {
        self.ch.degree_part(1)
    }

    /// The dual bundle: degree-`i` parts of `ch` pick up `(-1)^i`.
    pub fn dual(&self) -> Self {
        let dim = self.space.dim();
        let mut ch = ChowClass::zero(&self.space);
        for d in 0..=dim {
            let part = self.ch.degree_part(d);
            ch = &ch + &(if d % 2 == 1 { -&part } else { part });
        }
        BundleClass {
            space: Arc::clone(&self.space),
            rank: self.rank,
            ch,
        }
    }

    pub fn tensor(&self, other: &BundleClass) -> Self {
        assert!(same_space(&self.space, &other.space));
        BundleClass {
            space: Arc::clone(&self.space),
            rank: self.rank * other.rank,
            ch: &self.ch * &other.ch,
        }
    }

    pub fn sum(&self, other: &BundleClass) -> Self {
        assert!(same_space(&self.space, &other.space));
        BundleClass {
            space: Arc::clone(&self.space),
            rank: self.rank + other.rank,
            ch: &self.ch + &other.ch,
        }
    }

    /// K-theory difference; the result may have negative rank.
    pub fn difference(&self, other: &BundleClass) -> Self {
        assert!(same_space(&self.space, &other.space));
        BundleClass {
            space: Arc::clone(&self.space),
            rank: self.rank - other.rank,
            ch: &self.ch - &other.ch,
        }
    }

    /// Adams operation `ψ^k`: scales the degree-`i` part of `ch` by `k^i`.
    fn adams_ch(&self, k: u32) -> ChowClass {
        let dim = self.space.dim();
        let mut out = ChowClass::zero(&self.space);
        let mut factor = Rational::one();
        for d in 0..=dim {
            out = &out + &self.ch.degree_part(d).scale(&factor);
            factor *= Rational::from(k as i64);
        }
        out
    }

    /// The `d`-th symmetric power via the generating identity
    /// `Σ_d ch(Sym^d E) t^d = exp(Σ_k (t^k/k) ψ^k ch E)`.
    pub fn sym(&self, d: u32) -> Self {
        let space = &self.space;
        let zero = ChowClass::zero(space);
        let deg = d as usize;
        // A(t) = Σ_{k=1..d} (t^k / k) ψ^k(ch E), a polynomial with class
        // coefficients and no constant term.
        let mut a = vec![zero.clone(); deg + 1];
        for k in 1..=d {
            a[k as usize] = self.adams_ch(k).scale(&Rational::new(1, k as i64));
        }
        // exp(A) truncated at t^d
        let mut result = vec![zero.clone(); deg + 1];
        result[0] = ChowClass::one(space);
        let mut power = result.clone(); // A^j
        let mut factorial = Rational::one();
        for j in 1..=deg {
            // power <- power * A, truncated
            let mut next = vec![zero.clone(); deg + 1];
            for (u, pu) in power.iter().enumerate() {
                if pu.is_zero() {
                    continue;
                }
                for (v, av) in a.iter().enumerate().skip(1) {
                    if u + v > deg || av.is_zero() {
                        continue;
                    }
                    next[u + v] = &next[u + v] + &(pu * av);
                }
            }
            power = next;
            factorial *= Rational::from(j as i64);
            let inv = factorial.try_recip().unwrap();
            for (u, pu) in power.iter().enumerate() {
                result[u] = &result[u] + &pu.scale(&inv);
            }
        }
        let ch = result.swap_remove(deg);
        // the degree-0 part is the binomial C(rank + d - 1, d)
        let rank_part = ch.degree_part(0).integral_free_scalar();
        let rank = rank_part
            .to_integer()
            .expect("symmetric-power rank is integral");
        BundleClass {
            space: Arc::clone(space),
            rank: i64::try_from(&rank).expect("rank fits in i64"),
            ch,
        }
    }

    /// Chern classes `c_0 .. c_upto` from the Chern character by Newton's
    /// identities (`p_i = i!·ch_i`, `m c_m = Σ (-1)^{i-1} p_i c_{m-i}`).
    pub fn chern_classes(&self, upto: u32) -> Vec<ChowClass> {
        let space = &self.space;
        let mut p = vec![ChowClass::zero(space)];
        let mut factorial = Rational::one();
        for i in 1..=upto {
            factorial *= Rational::from(i as i64);
            p.push(self.ch.degree_part(i).scale(&factorial));
        }
        let mut c = vec![ChowClass::one(space)];
        for m in 1..=upto as usize {
            let mut acc = ChowClass::zero(space);
            for i in 1..=m {
                let term = &p[i] * &c[m - i];
                acc = if i % 2 == 1 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            c.push(acc.scale(&Rational::new(1, m as i64)));
        }
        c
    }

    /// Total Chern class `c_0 + c_1 + … + c_dim`.
    pub fn total_chern(&self) -> ChowClass {
        let dim = self.space.dim();
        self.chern_classes(dim)
            .into_iter()
            .fold(ChowClass::zero(&self.space), |acc, c| &acc + &c)
    }

    /// Rebuilds a bundle from rank and Chern classes `c_1 ..` (the inverse
    /// of [`BundleClass::chern_classes`]): `p_m = Σ (-1)^{i-1} c_i p_{m-i}
    /// + (-1)^{m-1} m c_m`, then `ch = rank + Σ p_m / m!`.
    pub fn from_chern_classes(space: &Arc<Space>, rank: i64, classes: &[ChowClass]) -> Self {
        let dim = space.dim() as usize;
        let c = |i: usize| -> ChowClass {
            if i == 0 {
                ChowClass::one(space)
            } else {
                classes
                    .get(i - 1)
                    .cloned()
                    .unwrap_or_else(|| ChowClass::zero(space))
            }
        };
        let mut p = vec![ChowClass::zero(space)];
        for m in 1..=dim {
            let mut acc = ChowClass::zero(space);
            for i in 1..m {
                let term = &c(i) * &p[m - i];
                acc = if i % 2 == 1 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            let lead = c(m).scale(&Rational::from(m as i64));
            acc = if m % 2 == 1 {
                &acc + &lead
            } else {
                &acc - &lead
            };
            p.push(acc);
        }
        let mut ch = ChowClass::one(space).scale(&Rational::from(rank));
        let mut factorial = Rational::one();
        for (m, pm) in p.iter().enumerate().skip(1) {
            factorial *= Rational::from(m as i64);
            ch = &ch + &pm.scale(&factorial.try_recip().unwrap());
        }
        BundleClass {
            space: Arc::clone(space),
            rank,
            ch,
        }
    }

    /// Pulls the bundle back along a projective bundle projection.
    pub fn pullback_to(&self, space: &Arc<Space>) -> Self {
        BundleClass {
            space: Arc::clone(space),
            rank: self.rank,
            ch: ChowClass::pullback_to(space, &self.ch),
        }
    }
}

fn space_of(c: &ChowClass) -> Arc<Space> {
    Arc::clone(c.space())
}

fn space_of_ref(c: &ChowClass) -> &Arc<Space> {
    c.space()
}

/// `exp(x) = Σ x^i / i!`, exact because the ring is nilpotent above the
/// dimension.
fn exp_class(x: &ChowClass) -> ChowClass {
    let space = space_of_ref(x);
    let dim = space.dim();
    let mut acc = ChowClass::one(space);
    let mut term = ChowClass::one(space);
    for i in 1..=dim {
        term = &term * x;
        term = term.scale(&Rational::new(1, i as i64));
        if term.is_zero() {
            break;
        }
        acc = &acc + &term;
    }
    acc
}

impl ChowClass {
    /// The scalar multiple of `1` a degree-0 class is.
    pub(crate) fn integral_free_scalar(&self) -> Rational {
        // degree-0 classes are multiples of the fundamental class; read the
        // coefficient off by pairing with the point class via integral on
        // the product with the point class.
        (self * &ChowClass::point_class(self.space())).integral()
    }
}

/// The tautological subbundle `K` (rank `k`) of the trivial `n`-bundle on
/// `Gr(k, n)`; `ch(K) = n - ch(Q)`.
pub fn tautological_sub(space: &Arc<Space>) -> BundleClass {
    let (k, n) = space
        .grassmannian_params()
        .expect("tautological bundles live on Grassmannians");
    BundleClass::trivial(space, n as i64)
        .difference(&tautological_quotient(space))
        .with_rank_check(k as i64)
}

/// The tautological quotient `Q` (rank `n-k`) on `Gr(k, n)`, with
/// `c_i(Q) = σ_{(i)}`.
pub fn tautological_quotient(space: &Arc<Space>) -> BundleClass {
    let (k, n) = space
        .grassmannian_params()
        .expect("tautological bundles live on Grassmannians");
    let classes: Vec<ChowClass> = (1..=n - k)
        .map(|i| ChowClass::schubert(space, &Partition::row(i)))
        .collect();
    BundleClass::from_chern_classes(space, (n - k) as i64, &classes)
}

impl BundleClass {
    fn with_rank_check(self, expected: i64) -> Self {
        assert_eq!(self.rank, expected);
        self
    }
}

/// `O(1)` on a projective bundle.
pub fn o_one(space: &Arc<Space>) -> BundleClass {
    BundleClass::line_bundle(&ChowClass::hyperplane(space))
}

/// The tautological subbundle `O(-1) ⊂ π*E` on a projective bundle.
pub fn o_minus_one(space: &Arc<Space>) -> BundleClass {
    BundleClass::line_bundle(&-&ChowClass::hyperplane(space))
}

/// The universal quotient `Q̃ = π*E / O(-1)` on `P(E)`, of rank `r - 1`.
pub fn relative_quotient(space: &Arc<Space>) -> BundleClass {
    let bundle = space
        .projectivized_bundle()
        .expect("relative quotient lives on a projective bundle")
        .clone();
    bundle.pullback_to(space).difference(&o_minus_one(space))
}

/// The tangent bundle, as a K-theory class.
///
/// `T(point) = 0`; `T(Gr) = K^∨ ⊗ Q`; on `P(E) -> X` the relative part is
/// `O(1) ⊗ Q̃`, added to the pullback of `T(X)`.
pub fn tangent_bundle(space: &Arc<Space>) -> BundleClass {
    match space.kind() {
        SpaceKind::Point => BundleClass::trivial(space, 0),
        SpaceKind::Grassmannian { .. } => {
            let k = tautological_sub(space);
            let q = tautological_quotient(space);
            k.dual().tensor(&q)
        }
        SpaceKind::ProjBundle { base, .. } => {
            let relative = o_one(space).tensor(&relative_quotient(space));
            tangent_bundle(base).pullback_to(space).sum(&relative)
        }
    }
}

/// The canonical class `K = -c₁(T)`.
pub fn canonical_class(space: &Arc<Space>) -> ChowClass {
    -&tangent_bundle(space).c1()
}
