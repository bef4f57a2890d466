//! Spaces and their Chow classes.
//!
//! A [`Space`] is a point, a Grassmannian, or a projective bundle over
//! another space, so the spaces form towers. Chow classes are stored in
//! normal form against the canonical basis of each level:
//!
//! - on `Gr(k,n)`, the Schubert classes `σ_λ` for `λ` in the `k x (n-k)`
//!   box, multiplied by the Littlewood–Richardson rule with box truncation;
//! - on `P(E) -> X` with `rank E = r`, the module basis `1, z, ..., z^{r-1}`
//!   over the Chow ring of `X`, where `z = c₁(O(1))` and
//!   `z^r = -Σ_i c_i(E) z^{r-i}`.
//!
//! The projectivization convention is that `O(-1)` is a subbundle of the
//! pullback of `E` (`P(E) = Proj Sym E^∨`, points are lines in the fibers).
//! Pushforward along `π: P(E) -> X` kills `z^j` for `j < r-1` and sends
//! `z^{r-1}` to `1`, so integration over a tower is literal coefficient
//! extraction, one level at a time.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::qseries::Rational;

use super::bundle::BundleClass;
use super::lr::lr_product;
use super::partition::Partition;
use super::ChowError;

pub(crate) enum SpaceKind {
    Point,
    Grassmannian {
        k: u32,
        n: u32,
    },
    ProjBundle {
        base: Arc<Space>,
        bundle: BundleClass,
        rank: u32,
        /// `z^{rank+t} = Σ_u zpow_normal[t][u] z^u`, entries on the base.
        zpow_normal: Vec<Vec<ChowClass>>,
    },
}

/// A point, Grassmannian, or projective-bundle tower; immutable once built
/// and always handled through `Arc`.
pub struct Space {
    kind: SpaceKind,
    dim: u32,
}

impl Space {
    pub fn point() -> Arc<Space> {
        Arc::new(Space {
            kind: SpaceKind::Point,
            dim: 0,
        })
    }

    /// The Grassmannian of `k`-dimensional subspaces of an `n`-space.
    pub fn grassmannian(k: u32, n: u32) -> Result<Arc<Space>, ChowError> {
        if k == 0 || k >= n {
            return Err(ChowError::InvalidGrassmannian { k, n });
        }
        Ok(Arc::new(Space {
            kind: SpaceKind::Grassmannian { k, n },
            dim: k * (n - k),
        }))
    }

    /// The projectivization `P(E) -> X` of a bundle of positive rank, with
    /// `O(-1) ⊂ π*E`.
    pub fn proj_bundle(base: &Arc<Space>, bundle: &BundleClass) -> Result<Arc<Space>, ChowError> {
        if !same_space(bundle.space(), base) {
            return Err(ChowError::BundleSpaceMismatch);
        }
        if bundle.rank() < 1 {
            return Err(ChowError::NonPositiveRank {
                rank: bundle.rank(),
            });
        }
        let rank = bundle.rank() as u32;
        let cherns = bundle.chern_classes(rank);
        // z^r = -Σ_{i=1..r} c_i(E) z^{r-i}
        let first: Vec<ChowClass> = (0..rank).map(|u| -&cherns[(rank - u) as usize]).collect();
        let mut zpow_normal = vec![first];
        for _ in 1..rank.max(1) - 1 {
            let prev = zpow_normal.last().unwrap();
            let top = prev[rank as usize - 1].clone();
            let next: Vec<ChowClass> = (0..rank as usize)
                .map(|u| {
                    let shifted = if u >= 1 {
                        prev[u - 1].clone()
                    } else {
                        ChowClass::zero(base)
                    };
                    &shifted + &(&top * &zpow_normal[0][u])
                })
                .collect();
            zpow_normal.push(next);
        }
        Ok(Arc::new(Space {
            kind: SpaceKind::ProjBundle {
                base: Arc::clone(base),
                bundle: bundle.clone(),
                rank,
                zpow_normal,
            },
            dim: base.dim + rank - 1,
        }))
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub(crate) fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    /// The `(k, n)` of a Grassmannian.
    pub fn grassmannian_params(&self) -> Option<(u32, u32)> {
        match self.kind {
            SpaceKind::Grassmannian { k, n } => Some((k, n)),
            _ => None,
        }
    }

    /// The base of a projective bundle.
    pub fn base(&self) -> Option<&Arc<Space>> {
        match &self.kind {
            SpaceKind::ProjBundle { base, .. } => Some(base),
            _ => None,
        }
    }

    /// The bundle a projective bundle projectivizes.
    pub fn projectivized_bundle(&self) -> Option<&BundleClass> {
        match &self.kind {
            SpaceKind::ProjBundle { bundle, .. } => Some(bundle),
            _ => None,
        }
    }

    /// Number of basis elements (over the rationals) of the Chow ring.
    pub fn basis_size(&self) -> u64 {
        match &self.kind {
            SpaceKind::Point => 1,
            SpaceKind::Grassmannian { k, n } => Partition::all_in_box(*k, n - k).len() as u64,
            SpaceKind::ProjBundle { base, rank, .. } => base.basis_size() * *rank as u64,
        }
    }
}

/// Structural equality; towers compare level by level.
impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (SpaceKind::Point, SpaceKind::Point) => true,
            (
                SpaceKind::Grassmannian { k: ka, n: na },
                SpaceKind::Grassmannian { k: kb, n: nb },
            ) => ka == kb && na == nb,
            (
                SpaceKind::ProjBundle {
                    base: ba,
                    bundle: ea,
                    ..
                },
                SpaceKind::ProjBundle {
                    base: bb,
                    bundle: eb,
                    ..
                },
            ) => ba == bb && ea == eb,
            _ => false,
        }
    }
}

pub(crate) fn same_space(a: &Arc<Space>, b: &Arc<Space>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SpaceKind::Point => write!(f, "Point"),
            SpaceKind::Grassmannian { k, n } => write!(f, "Gr({k},{n})"),
            SpaceKind::ProjBundle { base, rank, .. } => {
                write!(f, "P(rank-{rank} bundle over {base:?})")
            }
        }
    }
}

#[derive(Clone, PartialEq)]
pub(crate) enum Repr {
    /// A rational multiple of the class of a point (on `Point`).
    Scalar(Rational),
    /// Schubert-basis coordinates on a Grassmannian.
    Schubert(BTreeMap<Partition, Rational>),
    /// `Σ_u f_u z^u` with `f_u` on the base; trailing zeros trimmed.
    Tower(Vec<ChowClass>),
}

/// An element of the Chow ring of a [`Space`], possibly of mixed degree.
#[derive(Clone)]
pub struct ChowClass {
    space: Arc<Space>,
    repr: Repr,
}

impl ChowClass {
    pub fn zero(space: &Arc<Space>) -> Self {
        let repr = match space.kind() {
            SpaceKind::Point => Repr::Scalar(Rational::zero()),
            SpaceKind::Grassmannian { .. } => Repr::Schubert(BTreeMap::new()),
            SpaceKind::ProjBundle { .. } => Repr::Tower(Vec::new()),
        };
        ChowClass {
            space: Arc::clone(space),
            repr,
        }
    }

    /// The fundamental class `1`.
    pub fn one(space: &Arc<Space>) -> Self {
        let repr = match space.kind() {
            SpaceKind::Point => Repr::Scalar(Rational::one()),
            SpaceKind::Grassmannian { .. } => {
                Repr::Schubert([(Partition::empty(), Rational::one())].into())
            }
            SpaceKind::ProjBundle { base, .. } => Repr::Tower(vec![ChowClass::one(base)]),
        };
        ChowClass {
            space: Arc::clone(space),
            repr,
        }
    }

    /// The Schubert class `σ_λ` on a Grassmannian.
    pub fn schubert(space: &Arc<Space>, lambda: &Partition) -> Self {
        let (k, n) = space
            .grassmannian_params()
            .expect("schubert classes live on Grassmannians");
        assert!(
            lambda.fits_in(k, n - k),
            "partition {lambda} escapes the {k} x {} box",
            n - k
        );
        ChowClass {
            space: Arc::clone(space),
            repr: Repr::Schubert([(lambda.clone(), Rational::one())].into()),
        }
    }

    /// `z = c₁(O(1))` on a projective bundle.
    pub fn hyperplane(space: &Arc<Space>) -> Self {
        match space.kind() {
            SpaceKind::ProjBundle { base, .. } => ChowClass {
                space: Arc::clone(space),
                repr: Repr::Tower(vec![ChowClass::zero(base), ChowClass::one(base)]),
            },
            _ => panic!("hyperplane class lives on a projective bundle"),
        }
    }

    /// The class of a point (the top-degree dual of `1`).
    pub fn point_class(space: &Arc<Space>) -> Self {
        match space.kind() {
            SpaceKind::Point => ChowClass::one(space),
            SpaceKind::Grassmannian { k, n } => {
                ChowClass::schubert(space, &Partition::empty().complement_in(*k, n - k))
            }
            SpaceKind::ProjBundle { base, rank, .. } => {
                let mut components = vec![ChowClass::zero(base); *rank as usize];
                components[*rank as usize - 1] = ChowClass::point_class(base);
                ChowClass {
                    space: Arc::clone(space),
                    repr: Repr::Tower(components),
                }
            }
        }
    }

    /// Pulls a class on the base back to the bundle.
    pub fn pullback_to(space: &Arc<Space>, class: &ChowClass) -> Self {
        match space.kind() {
            SpaceKind::ProjBundle { base, .. } => {
                assert!(
                    same_space(base, &class.space),
                    "pullback from the wrong space"
                );
                let mut c = ChowClass {
                    space: Arc::clone(space),
                    repr: Repr::Tower(vec![class.clone()]),
                };
                c.normalize();
                c
            }
            _ => panic!("pullback target must be a projective bundle"),
        }
    }

    /// Pushforward along `π: P(E) -> X`: the coefficient of `z^{rank-1}`.
    pub fn pushforward(&self) -> ChowClass {
        match (self.space.kind(), &self.repr) {
            (SpaceKind::ProjBundle { base, rank, .. }, Repr::Tower(components)) => components
                .get(*rank as usize - 1)
                .cloned()
                .unwrap_or_else(|| ChowClass::zero(base)),
            _ => panic!("pushforward applies to projective bundles"),
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Scalar(r) => r.is_zero(),
            Repr::Schubert(m) => m.is_empty(),
            Repr::Tower(v) => v.iter().all(ChowClass::is_zero),
        }
    }

    fn normalize(&mut self) {
        match &mut self.repr {
            Repr::Scalar(_) => {}
            Repr::Schubert(m) => m.retain(|_, c| !c.is_zero()),
            Repr::Tower(v) => {
                while v.last().is_some_and(ChowClass::is_zero) {
                    v.pop();
                }
            }
        }
    }

    pub fn scale(&self, r: &Rational) -> ChowClass {
        let repr = match &self.repr {
            Repr::Scalar(c) => Repr::Scalar(c * r),
            Repr::Schubert(m) => Repr::Schubert(
                m.iter()
                    .filter_map(|(p, c)| {
                        let v = c * r;
                        (!v.is_zero()).then(|| (p.clone(), v))
                    })
                    .collect(),
            ),
            Repr::Tower(v) => Repr::Tower(v.iter().map(|c| c.scale(r)).collect()),
        };
        let mut out = ChowClass {
            space: Arc::clone(&self.space),
            repr,
        };
        out.normalize();
        out
    }

    /// The degree-`d` graded piece.
    pub fn degree_part(&self, d: u32) -> ChowClass {
        let repr = match &self.repr {
            Repr::Scalar(c) => Repr::Scalar(if d == 0 { c.clone() } else { Rational::zero() }),
            Repr::Schubert(m) => Repr::Schubert(
                m.iter()
                    .filter(|(p, _)| p.weight() == d)
                    .map(|(p, c)| (p.clone(), c.clone()))
                    .collect(),
            ),
            Repr::Tower(v) => Repr::Tower(
                v.iter()
                    .enumerate()
                    .map(|(u, c)| {
                        if d >= u as u32 {
                            c.degree_part(d - u as u32)
                        } else {
                            ChowClass::zero(c.space())
                        }
                    })
                    .collect(),
            ),
        };
        let mut out = ChowClass {
            space: Arc::clone(&self.space),
            repr,
        };
        out.normalize();
        out
    }

    /// Integration over the space: iterated pushforward down the tower, then
    /// the coefficient of the point class. Off-top-degree parts contribute
    /// zero.
    pub fn integral(&self) -> Rational {
        match (&self.space.kind, &self.repr) {
            (SpaceKind::Point, Repr::Scalar(r)) => r.clone(),
            (SpaceKind::Grassmannian { k, n }, Repr::Schubert(m)) => {
                let point = Partition::empty().complement_in(*k, n - k);
                m.get(&point).cloned().unwrap_or_else(Rational::zero)
            }
            (_, Repr::Tower(_)) => self.pushforward().integral(),
            _ => unreachable!("representation matches space kind"),
        }
    }

    /// `self^e` by repeated multiplication.
    pub fn pow(&self, e: u32) -> ChowClass {
        let mut acc = ChowClass::one(&self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for ChowClass {
    fn eq(&self, other: &Self) -> bool {
        if !same_space(&self.space, &other.space) {
            return false;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        a.normalize();
        b.normalize();
        a.repr == b.repr
    }
}

impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        assert!(
            same_space(&self.space, &rhs.space),
            "chow classes on different spaces"
        );
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Scalar(a), Repr::Scalar(b)) => Repr::Scalar(a + b),
            (Repr::Schubert(a), Repr::Schubert(b)) => {
                let mut m = a.clone();
                for (p, c) in b {
                    let entry = m.entry(p.clone()).or_insert_with(Rational::zero);
                    *entry += c.clone();
                }
                Repr::Schubert(m)
            }
            (Repr::Tower(a), Repr::Tower(b)) => {
                let len = a.len().max(b.len());
                let base = self.space.base().expect("tower repr on a bundle");
                let v = (0..len)
                    .map(|u| {
                        let x = a.get(u).cloned().unwrap_or_else(|| ChowClass::zero(base));
                        let y = b.get(u).cloned().unwrap_or_else(|| ChowClass::zero(base));
                        &x + &y
                    })
                    .collect();
                Repr::Tower(v)
            }
            _ => unreachable!("same space implies same representation kind"),
        };
        let mut out = ChowClass {
            space: Arc::clone(&self.space),
            repr,
        };
        out.normalize();
        out
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self + &(-rhs)
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(&Rational::from(-1i64))
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        assert!(
            same_space(&self.space, &rhs.space),
            "chow classes on different spaces"
        );
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Scalar(a), Repr::Scalar(b)) => Repr::Scalar(a * b),
            (Repr::Schubert(a), Repr::Schubert(b)) => {
                let (k, n) = self.space.grassmannian_params().unwrap();
                let mut m: BTreeMap<Partition, Rational> = BTreeMap::new();
                for (la, ca) in a {
                    for (mu, cb) in b {
                        let coeff = ca * cb;
                        for (nu, mult) in lr_product(la, mu, k, n - k).iter() {
                            let entry = m.entry(nu.clone()).or_insert_with(Rational::zero);
                            *entry += &coeff * &Rational::from(*mult);
                        }
                    }
                }
                Repr::Schubert(m)
            }
            (Repr::Tower(a), Repr::Tower(b)) => {
                let (base, rank, zpow_normal) = match self.space.kind() {
                    SpaceKind::ProjBundle {
                        base,
                        rank,
                        zpow_normal,
                        ..
                    } => (base, *rank as usize, zpow_normal),
                    _ => unreachable!(),
                };
                // polynomial product in z, then normal-form reduction
                let mut h = vec![ChowClass::zero(base); (a.len() + b.len()).saturating_sub(1)];
                for (u, fu) in a.iter().enumerate() {
                    if fu.is_zero() {
                        continue;
                    }
                    for (v, gv) in b.iter().enumerate() {
                        if gv.is_zero() {
                            continue;
                        }
                        h[u + v] = &h[u + v] + &(fu * gv);
                    }
                }
                for w in (rank..h.len()).rev() {
                    if h[w].is_zero() {
                        continue;
                    }
                    let excess = std::mem::replace(&mut h[w], ChowClass::zero(base));
                    for u in 0..rank {
                        let contribution = &excess * &zpow_normal[w - rank][u];
                        h[u] = &h[u] + &contribution;
                    }
                }
                h.truncate(rank);
                Repr::Tower(h)
            }
            _ => unreachable!("same space implies same representation kind"),
        };
        let mut out = ChowClass {
            space: Arc::clone(&self.space),
            repr,
        };
        out.normalize();
        out
    }
}

impl fmt::Debug for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Scalar(r) => write!(f, "{r}"),
            Repr::Schubert(m) => {
                if m.is_empty() {
                    return write!(f, "0");
                }
                for (i, (p, c)) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{c}·σ{p}")?;
                }
                Ok(())
            }
            Repr::Tower(v) => {
                if v.iter().all(ChowClass::is_zero) {
                    return write!(f, "0");
                }
                let mut first = true;
                for (u, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    write!(f, "({c:?})·z^{u}")?;
                }
                Ok(())
            }
        }
    }
}
