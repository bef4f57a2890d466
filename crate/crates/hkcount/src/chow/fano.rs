//! The 20-dimensional tower of cubic cones and its two headline numbers.
//!
//! Over `G = Gr(4,6)` (3-planes `P ⊂ P⁵`), the bundle `P(K) -> G` adds the
//! choice of a vertex `v ∈ P`, and `P(E) -> P(K)` with `E = Sym³(Q̃^∨)` adds
//! a cubic cone `Z ⊂ P` with vertex `v`, where `Q̃ = K/O(-1)` is the rank-3
//! quotient whose projectivization is the plane of lines through `v`. A
//! cubic fourfold cuts out, on this 20-dimensional space, the curve of cubic
//! cones it contains as the zero locus of a section of the rank-19 bundle
//! `F = Sym³K^∨ / O(-1)`.
//!
//! Two numbers are computed here exactly:
//!
//! - the adjunction integral `∫ c₁₉(F)·(K_{P(E)} + c₁(F)) = 2g - 2`, giving
//!   the genus `g = 631` of the curve of cones;
//! - the degree `∫ c₁₉(F)·D = 3780` of its map to the j-line, where `D` is
//!   the divisor of cones over singular plane cubics.
//!
//! `D` is computed two independent ways: the closed form `12z - 12c₁(Q̃)`
//! of the relative discriminant, and the pushforward of the Euler class
//! `c₃(O(1,2) ⊗ V^∨)` from the incidence bundle, which must agree.

use std::sync::Arc;

use crate::qseries::Rational;

use super::bundle::{
    canonical_class, o_minus_one, relative_quotient, tautological_sub, BundleClass,
};
use super::space::{same_space, ChowClass, Space};
use super::ChowError;

/// The Grassmannian, the two bundle levels, and the bundles living on them.
pub struct FanoTower {
    /// `G = Gr(4,6)`, 3-planes in `P⁵`.
    pub grassmannian: Arc<Space>,
    /// `P(K) -> G`: a 3-plane with a marked point, dimension 11.
    pub pointed_planes: Arc<Space>,
    /// `P(E) -> P(K)`: a cubic cone with marked vertex, dimension 20.
    pub cones: Arc<Space>,
    /// The tautological rank-4 subbundle `K` on `G`.
    pub tautological_sub: BundleClass,
    /// `Q̃ = K/O(-1)` on `P(K)`, rank 3: lines through the vertex.
    pub vertex_quotient: BundleClass,
    /// `E = Sym³(Q̃^∨)` on `P(K)`, rank 10: cubic cones with that vertex.
    pub cone_equations: BundleClass,
    /// `F = Sym³K^∨ / O(-1)` on `P(E)`, virtual rank 19: the conditions
    /// cutting the curve of cones contained in a fixed cubic fourfold.
    pub residual_conditions: BundleClass,
    /// `y = c₁(O_{P(K)}(1))`.
    pub y: ChowClass,
    /// `z = c₁(O_{P(E)}(1))`.
    pub z: ChowClass,
}

impl FanoTower {
    pub fn build() -> Result<FanoTower, ChowError> {
        let grassmannian = Space::grassmannian(4, 6)?;
        let k_bundle = tautological_sub(&grassmannian);
        let pointed_planes = Space::proj_bundle(&grassmannian, &k_bundle)?;
        let y = ChowClass::hyperplane(&pointed_planes);
        let vertex_quotient = relative_quotient(&pointed_planes);
        let cone_equations = vertex_quotient.dual().sym(3);
        let cones = Space::proj_bundle(&pointed_planes, &cone_equations)?;
        let z = ChowClass::hyperplane(&cones);
        let cubic_forms = k_bundle
            .dual()
            .sym(3)
            .pullback_to(&pointed_planes)
            .pullback_to(&cones);
        let residual_conditions = cubic_forms.difference(&o_minus_one(&cones));
        Ok(FanoTower {
            grassmannian,
            pointed_planes,
            cones,
            tautological_sub: k_bundle,
            vertex_quotient,
            cone_equations,
            residual_conditions,
            y,
            z,
        })
    }

    /// `c₁₉(F)`, the class of the curve of cones.
    pub fn curve_class(&self) -> ChowClass {
        self.residual_conditions.chern_classes(19).swap_remove(19)
    }

    /// The adjunction integral `∫ c₁₉(F)·(K_{P(E)} + c₁(F))` and the genus
    /// it determines. Errors if the integral is odd or non-integral.
    pub fn genus(&self) -> Result<(Rational, i64), ChowError> {
        let curve = self.curve_class();
        self.genus_from_curve_class(&curve)
    }

    /// As [`FanoTower::genus`], reusing a precomputed `c₁₉(F)`.
    pub fn genus_from_curve_class(&self, curve: &ChowClass) -> Result<(Rational, i64), ChowError> {
        let adjoint = &canonical_class(&self.cones) + &self.residual_conditions.c1();
        let integral = (curve * &adjoint).integral();
        let value = integral
            .to_integer()
            .ok_or_else(|| ChowError::OddAdjunctionIntegral {
                integral: Box::new(integral.clone()),
            })?;
        let value = i64::try_from(&value).expect("adjunction integral fits in i64");
        if value % 2 != 0 {
            return Err(ChowError::OddAdjunctionIntegral {
                integral: Box::new(integral),
            });
        }
        Ok((integral, value / 2 + 1))
    }

    /// The divisor of cones over singular plane cubics, by the closed form
    /// `12z - 12·c₁(Q̃)`.
    pub fn discriminant_divisor(&self) -> ChowClass {
        discriminant_divisor_on(&self.cones, &self.vertex_quotient)
            .expect("tower is built consistently")
    }

    /// The same divisor via the Euler-class pushforward route.
    pub fn discriminant_divisor_via_euler(&self) -> ChowClass {
        discriminant_divisor_via_euler(&self.cones, &self.vertex_quotient)
            .expect("tower is built consistently")
    }

    /// `∫ c₁₉(F)·D`: the degree of the map from the curve of cones to the
    /// j-line.
    pub fn j_line_degree(&self, divisor: &ChowClass) -> Rational {
        (&self.curve_class() * divisor).integral()
    }
}

/// The relative discriminant of plane cubics: for a rank-3 bundle `V` on
/// `X`, builds `P(W) -> X` with `W = Sym³(V^∨)` — the space of cubic curves
/// in the fibers `P(V)` — and returns it with the divisor class
/// `D = 12z - 12·c₁(V)` of singular cubics.
pub fn discriminant_divisor_class(
    x: &Arc<Space>,
    v: &BundleClass,
) -> Result<(Arc<Space>, ChowClass), ChowError> {
    let pw = Space::proj_bundle(x, &v.dual().sym(3))?;
    let d = discriminant_divisor_on(&pw, v)?;
    Ok((pw, d))
}

/// The discriminant divisor on an already built `P(Sym³V^∨)`.
pub fn discriminant_divisor_on(pw: &Arc<Space>, v: &BundleClass) -> Result<ChowClass, ChowError> {
    check_cubic_bundle(pw, v)?;
    let z = ChowClass::hyperplane(pw);
    let c1 = ChowClass::pullback_to(pw, &v.c1());
    Ok((&z - &c1).scale(&Rational::from(12i64)))
}

/// The discriminant divisor by its defining geometry: on the fiber product
/// `P(W) ×_X P(V)` (modeled as `P(π*V) -> P(W)`), the locus of pairs
/// (cubic, singular point) is cut by a section of the rank-3 bundle
/// `M = O(1,2) ⊗ V^∨`; its Euler class `c₃(M)` pushes forward to `D`.
pub fn discriminant_divisor_via_euler(
    pw: &Arc<Space>,
    v: &BundleClass,
) -> Result<ChowClass, ChowError> {
    check_cubic_bundle(pw, v)?;
    let v_up = v.pullback_to(pw);
    let pwv = Space::proj_bundle(pw, &v_up)?;
    // M = p₁*O_PW(1) ⊗ O_PV(2) ⊗ V^∨
    let zeta = ChowClass::pullback_to(&pwv, &ChowClass::hyperplane(pw));
    let twist = &zeta + &ChowClass::hyperplane(&pwv).scale(&Rational::from(2i64));
    let m = BundleClass::line_bundle(&twist).tensor(&v_up.dual().pullback_to(&pwv));
    let euler = m.chern_classes(3).swap_remove(3);
    Ok(euler.pushforward())
}

fn check_cubic_bundle(pw: &Arc<Space>, v: &BundleClass) -> Result<(), ChowError> {
    if v.rank() != 3 {
        return Err(ChowError::RankMismatch {
            expected: 3,
            found: v.rank(),
        });
    }
    let projectivized = pw
        .projectivized_bundle()
        .ok_or(ChowError::BundleSpaceMismatch)?;
    let base = pw.base().ok_or(ChowError::BundleSpaceMismatch)?;
    if !same_space(v.space(), base) || projectivized != &v.dual().sym(3) {
        return Err(ChowError::BundleSpaceMismatch);
    }
    Ok(())
}

/// Builds the tower and returns the adjunction integral and genus.
pub fn sigma_genus() -> Result<(Rational, i64), ChowError> {
    FanoTower::build()?.genus()
}

/// Builds the tower and returns the j-line degree; with `via_euler` the
/// divisor is computed by the Euler-class route and checked against the
/// closed form first.
pub fn sigma_j_degree(via_euler: bool) -> Result<Rational, ChowError> {
    let tower = FanoTower::build()?;
    let divisor = tower.discriminant_divisor();
    let divisor = if via_euler {
        let euler = tower.discriminant_divisor_via_euler();
        if euler != divisor {
            return Err(ChowError::DiscriminantRouteMismatch);
        }
        euler
    } else {
        divisor
    };
    Ok(tower.j_line_degree(&divisor))
}
