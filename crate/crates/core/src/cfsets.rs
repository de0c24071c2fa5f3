//! Steiner generation, C_F^m-sets and exterior sets.
//!
//! Pencil collineations are described in the coordinates of a frame
//! (R, E, L) with R = (1,0,0), L = (0,0,1): the line through R with direction
//! (α, β) has dual coordinates (0, β, −α) and is sent to the line
//! α'x₁ + β'x₂ = 0 through L, where (α', β')_t = A'(α^τ, β^τ)_t.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::gf::{gcd_u64, Fe, FieldTower};
use crate::linalg::{self, cross, mat_vec, Mat2, Mat3};
use crate::projspace::{enumerate_points, line_through, Point2, ProjLine, Subplane};
use crate::sesqui::PlaneForm;

/// A collineation between the pencils through R and L with accompanying
/// automorphism x ↦ x^{q^exponent}.
#[derive(Clone, Debug)]
pub struct PencilCollineation {
    r: Point2,
    l: Point2,
    frame: Mat3,
    a: Mat2,
    exponent: i64,
}

/// Columns R, e_k, L for the first standard vector e_k completing a basis.
fn frame_for(field: &FieldTower, r: &Point2, l: &Point2) -> Result<Mat3> {
    for k in 0..3 {
        let mut e = [Fe::ZERO; 3];
        e[k] = Fe::ONE;
        let cols = [*r.coords(), e, *l.coords()];
        if !linalg::det3(field, &cols).is_zero() {
            return Ok(linalg::transpose(&cols));
        }
    }
    Err(Error::CoincidentVertices)
}

impl PencilCollineation {
    pub fn new(field: &FieldTower, r: Point2, l: Point2, a: Mat2, exponent: i64) -> Result<Self> {
        if r == l {
            return Err(Error::CoincidentVertices);
        }
        linalg::inverse(field, &a)?;
        let frame = frame_for(field, &r, &l)?;
        Ok(PencilCollineation {
            r,
            l,
            frame,
            a,
            exponent,
        })
    }

    /// The collineation whose intersection points are Γ of a rank-2 form with
    /// distinct radicals: R is the right radical, L the left radical, and A'
    /// is read off the form in the frame (R, E, L).
    pub fn from_form(form: &PlaneForm<'_>) -> Result<Self> {
        let field = form.field();
        let rank = form.rank();
        if rank != 2 {
            return Err(Error::WrongRank {
                expected: 2,
                found: rank,
            });
        }
        let rad = form.radicals();
        let r = Point2::new(field, rad.right[0])?;
        let l = Point2::new(field, rad.left[0])?;
        if r == l {
            return Err(Error::CoincidentVertices);
        }
        let frame = frame_for(field, &r, &l)?;
        let std = form.transformed(&frame);
        let s = std.matrix();
        let a = [[s[0][1], s[0][2]], [s[1][1], s[1][2]]];
        linalg::inverse(field, &a)?;
        Ok(PencilCollineation {
            r,
            l,
            frame,
            a,
            exponent: field.m() as i64,
        })
    }

    pub fn vertices(&self) -> (Point2, Point2) {
        (self.r, self.l)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.a
    }

    /// Φ(RL) = RL, i.e. the resulting set is a degenerate C_F^m-set.
    pub fn fixes_join(&self) -> bool {
        self.a[0][1].is_zero()
    }

    /// {ℓ ∩ Φ(ℓ) : ℓ through R}, with the whole line when ℓ = Φ(ℓ).
    pub fn generate(&self, field: &FieldTower) -> Vec<Point2> {
        let mut out = BTreeSet::new();
        let to_plane =
            |v: [Fe; 3]| Point2::new(field, mat_vec(field, &self.frame, &v)).expect("non-zero");
        for dir in enumerate_points::<2>(field) {
            let [alpha, beta] = *dir.coords();
            let (sa, sb) = (
                field.frobenius_q(alpha, self.exponent),
                field.frobenius_q(beta, self.exponent),
            );
            let a2 = field.add(field.mul(self.a[0][0], sa), field.mul(self.a[0][1], sb));
            let b2 = field.add(field.mul(self.a[1][0], sa), field.mul(self.a[1][1], sb));
            let ell = [Fe::ZERO, beta, field.neg(alpha)];
            let img = [a2, b2, Fe::ZERO];
            let meet = cross(field, &ell, &img);
            if meet.iter().all(|x| x.is_zero()) {
                let line = ProjLine::new(field, ell).expect("non-zero");
                out.extend(
                    line.points(field)
                        .into_iter()
                        .map(|p| to_plane(*p.coords())),
                );
            } else {
                out.insert(to_plane(meet));
            }
        }
        out.into_iter().collect()
    }
}

pub fn steiner_generate(field: &FieldTower, phi: &PencilCollineation) -> Vec<Point2> {
    phi.generate(field)
}

/// A (possibly degenerate) C_F^m-set.
#[derive(Clone, Debug)]
pub struct CfSet {
    points: Vec<Point2>,
    vertices: (Point2, Point2),
    degenerate: bool,
    canonical: bool,
    m: u32,
}

fn check_gcd(field: &FieldTower, m: u32) -> Result<()> {
    if m == 0 || gcd_u64(m as u64, field.n() as u64) != 1 {
        return Err(Error::GcdViolation { m, n: field.n() });
    }
    Ok(())
}

fn std_point(field: &FieldTower, v: [u64; 3]) -> Point2 {
    Point2::from_encoded(field, v).expect("non-zero")
}

impl CfSet {
    pub fn from_collineation(field: &FieldTower, phi: &PencilCollineation, m: u32) -> Self {
        CfSet {
            points: phi.generate(field),
            vertices: phi.vertices(),
            degenerate: phi.fixes_join(),
            canonical: false,
            m,
        }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn vertices(&self) -> (Point2, Point2) {
        self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn require_canonical(&self) -> Result<()> {
        if self.degenerate || !self.canonical {
            return Err(Error::DegenerateInput);
        }
        Ok(())
    }

    /// C_a = {(t^{q^m+1}, t, 1) : N(t) = a} for each a ∈ F_q^*.
    pub fn components(&self, field: &FieldTower) -> Result<BTreeMap<Fe, Vec<Point2>>> {
        self.require_canonical()?;
        let mut out: BTreeMap<Fe, Vec<Point2>> = BTreeMap::new();
        for p in &self.points {
            let [_, x2, x3] = *p.coords();
            if x2.is_zero() || x3.is_zero() {
                continue;
            }
            let t = field.div(x2, x3)?;
            out.entry(field.norm(t)).or_default().push(*p);
        }
        Ok(out)
    }
}

/// x₁x₃^{q^m} = x₂^{q^m+1}, vertices (1,0,0) and (0,0,1).
pub fn cf_canonical(field: &FieldTower, m: u32) -> Result<CfSet> {
    check_gcd(field, m)?;
    let k = m as i64;
    let points = enumerate_points::<3>(field)
        .into_iter()
        .filter(|p| {
            let [x1, x2, x3] = *p.coords();
            let lhs = field.mul(x1, field.frobenius_q(x3, k));
            let rhs = field.mul(x2, field.frobenius_q(x2, k));
            lhs == rhs
        })
        .collect();
    Ok(CfSet {
        points,
        vertices: (std_point(field, [1, 0, 0]), std_point(field, [0, 0, 1])),
        degenerate: false,
        canonical: true,
        m,
    })
}

/// x₃(x₁x₃^{q^m−1} − x₂^{q^m}) = 0, vertices (1,0,0) and (0,1,0).
pub fn cf_degenerate_canonical(field: &FieldTower, m: u32) -> Result<CfSet> {
    check_gcd(field, m)?;
    let k = m as i64;
    let points = enumerate_points::<3>(field)
        .into_iter()
        .filter(|p| {
            let [x1, x2, x3] = *p.coords();
            let lhs = field.mul(x1, field.frobenius_q(x3, k));
            let rhs = field.mul(field.frobenius_q(x2, k), x3);
            lhs == rhs
        })
        .collect();
    Ok(CfSet {
        points,
        vertices: (std_point(field, [1, 0, 0]), std_point(field, [0, 1, 0])),
        degenerate: true,
        canonical: true,
        m,
    })
}

/// (w^{q^{2m}}, w^{q^m}, w).
pub fn component_point(field: &FieldTower, w: Fe, m: u32) -> [Fe; 3] {
    let k = m as i64;
    [field.frobenius_q(w, 2 * k), field.frobenius_q(w, k), w]
}

/// A PG(2,q) inside C_1: the image of span_Fq{1, α, α²} under
/// w ↦ (w^{q^{2m}}, w^{q^m}, w). For n = 3 this is all of C_1.
pub fn embed_subplane_in_component(field: &FieldTower, cf: &CfSet) -> Result<Subplane> {
    cf.require_canonical()?;
    if field.n() < 3 {
        return Err(Error::HypothesisViolation(format!(
            "C_1 holds no PG(2,q) when n = {} < 3",
            field.n()
        )));
    }
    let g = field.generator();
    let g2 = field.mul(g, g);
    let ws = [Fe::ONE, g, g2, field.add(field.add(Fe::ONE, g), g2)];
    let mut frame = [Point2::from_encoded(field, [1, 0, 0])?; 4];
    for (slot, &w) in frame.iter_mut().zip(&ws) {
        *slot = Point2::new(field, component_point(field, w, cf.m))?;
    }
    Subplane::from_frame(field, frame)
}

/// The set (C \ ∪_{a∈T} C_a) ∪ ∪_{a∈T} J_a with J_a = {(−t,0,1) : N(t) = a}.
#[derive(Clone, Debug)]
pub struct ExteriorSet {
    points: Vec<Point2>,
    t: Vec<Fe>,
    replaced: BTreeMap<Fe, Vec<Point2>>,
}

impl ExteriorSet {
    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn replacement_set(&self) -> &[Fe] {
        &self.t
    }

    pub fn replaced(&self) -> &BTreeMap<Fe, Vec<Point2>> {
        &self.replaced
    }
}

pub fn exterior_set(field: &FieldTower, cf: &CfSet, t: &[Fe]) -> Result<ExteriorSet> {
    cf.require_canonical()?;
    for &a in t {
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if !field.is_in_subfield(a) {
            return Err(Error::NotInSubfield);
        }
    }
    if !t.contains(&Fe::ONE) {
        return Err(Error::MissingOne);
    }
    let mut t_sorted = t.to_vec();
    t_sorted.sort();
    t_sorted.dedup();
    let comps = cf.components(field)?;
    let mut points: BTreeSet<Point2> = cf.points.iter().copied().collect();
    let mut replaced = BTreeMap::new();
    for &a in &t_sorted {
        for p in comps.get(&a).into_iter().flatten() {
            points.remove(p);
        }
        let j: Vec<Point2> = field
            .norm_class(a)?
            .into_iter()
            .map(|s| Point2::new(field, [field.neg(s), Fe::ZERO, Fe::ONE]).expect("non-zero"))
            .collect();
        points.extend(j.iter().copied());
        replaced.insert(a, j);
    }
    Ok(ExteriorSet {
        points: points.into_iter().collect(),
        t: t_sorted,
        replaced,
    })
}

/// True iff no line joining two distinct points of `x` meets `pi`.
pub fn verify_exterior(field: &FieldTower, x: &[Point2], pi: &Subplane) -> bool {
    for (i, p) in x.iter().enumerate() {
        for p2 in &x[i + 1..] {
            let Ok(line) = line_through(field, p, p2) else {
                continue;
            };
            if pi.points().iter().any(|s| line.contains(field, s)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projspace::Plane;

    fn f(p: u32, n: u32, m: u32) -> FieldTower {
        FieldTower::new(p, 1, n, m).unwrap()
    }

    #[test]
    fn canonical_cardinalities() {
        let field = f(2, 3, 1);
        assert_eq!(cf_canonical(&field, 1).unwrap().len(), 9);
        assert_eq!(cf_degenerate_canonical(&field, 1).unwrap().len(), 17);
        assert!(matches!(
            cf_canonical(&field, 3),
            Err(Error::GcdViolation { m: 3, n: 3 })
        ));
    }

    #[test]
    fn canonical_matches_parametrization() {
        for (p, n, m) in [(2, 3, 1), (2, 3, 2), (3, 3, 1), (3, 2, 1)] {
            let field = f(p, n, m);
            let cf = cf_canonical(&field, m).unwrap();
            let k = m as i64;
            let mut param: BTreeSet<Point2> = field
                .elements()
                .map(|t| {
                    Point2::new(&field, [field.mul(t, field.frobenius_q(t, k)), t, Fe::ONE])
                        .unwrap()
                })
                .collect();
            param.insert(std_point(&field, [1, 0, 0]));
            assert_eq!(cf.points().iter().copied().collect::<BTreeSet<_>>(), param);
        }
    }

    #[test]
    fn components_partition() {
        for (p, n, count, size) in [(3, 3, 2, 13), (2, 3, 1, 7)] {
            let field = f(p, n, 1);
            let cf = cf_canonical(&field, 1).unwrap();
            let comps = cf.components(&field).unwrap();
            assert_eq!(comps.len(), count);
            assert!(comps.values().all(|c| c.len() == size));
            let total: usize = comps.values().map(Vec::len).sum();
            assert_eq!(total + 2, cf.len());
            let (r, l) = cf.vertices();
            let union: BTreeSet<Point2> = comps.values().flatten().copied().chain([r, l]).collect();
            assert_eq!(union.len(), cf.len());
        }
        let field = f(2, 3, 1);
        let degen = cf_degenerate_canonical(&field, 1).unwrap();
        assert_eq!(degen.components(&field), Err(Error::DegenerateInput));
    }

    #[test]
    fn steiner_matches_canonical_sets() {
        let field = f(3, 3, 1);
        let z = Fe::ZERO;
        let o = Fe::ONE;
        let r = std_point(&field, [1, 0, 0]);
        let l = std_point(&field, [0, 0, 1]);
        // Γ: (a x1 + c x2) x2^σ + (b x1 + d x2) x3^σ = 0 with A' = ((a,b),(c,d))
        // x1 x3^σ − x2^{σ+1} = 0 is a = 0, b = 1, c = −1, d = 0
        let phi = PencilCollineation::new(&field, r, l, [[z, o], [field.neg(o), z]], 1).unwrap();
        assert!(!phi.fixes_join());
        let cf = cf_canonical(&field, 1).unwrap();
        assert_eq!(phi.generate(&field), cf.points());
        // projectivity: a non-degenerate conic, no three points collinear
        let conic = PencilCollineation::new(&field, r, l, [[z, o], [field.neg(o), z]], 0).unwrap();
        let pts = conic.generate(&field);
        assert_eq!(pts.len(), 28);
        let plane = Plane::new(&field);
        let member: Vec<bool> = plane
            .points()
            .iter()
            .map(|p| pts.binary_search(p).is_ok())
            .collect();
        assert!(plane.intersection_sizes(&member).iter().all(|&s| s <= 2));
        // b = 0 gives the degenerate set containing RL
        let degen = PencilCollineation::new(&field, r, l, [[o, z], [z, o]], 1).unwrap();
        assert!(degen.fixes_join());
        assert_eq!(degen.generate(&field).len(), 2 * 27 + 1);
        assert!(matches!(
            PencilCollineation::new(&field, r, r, [[o, z], [z, o]], 1),
            Err(Error::CoincidentVertices)
        ));
    }

    #[test]
    fn steiner_from_rank2_forms_equals_gamma() {
        let field = f(2, 3, 1);
        let g = field.generator();
        let z = Fe::ZERO;
        let o = Fe::ONE;
        let shapes = [
            [[z, g, o], [z, o, z], [z, z, z]],
            [[z, o, z], [z, g, o], [z, z, z]],
        ];
        for a in shapes {
            let form = PlaneForm::new(&field, a);
            let phi = PencilCollineation::from_form(&form).unwrap();
            assert_eq!(phi.generate(&field), form.absolute_points());
            // in general position too
            let m = [[o, g, z], [z, o, g], [g, z, o]];
            let moved = form.transformed(&m);
            let phi = PencilCollineation::from_form(&moved).unwrap();
            assert_eq!(phi.generate(&field), moved.absolute_points());
        }
    }

    #[test]
    fn subplane_in_component_one() {
        for (p, n, m) in [(3, 3, 1), (2, 3, 2), (2, 5, 2), (3, 4, 3)] {
            let field = f(p, n, m);
            let cf = cf_canonical(&field, m).unwrap();
            let sp = embed_subplane_in_component(&field, &cf).unwrap();
            let q = field.q() as usize;
            assert_eq!(sp.len(), q * q + q + 1);
            let c1: BTreeSet<Point2> = cf.components(&field).unwrap()[&Fe::ONE]
                .iter()
                .copied()
                .collect();
            assert!(sp.points().iter().all(|s| c1.contains(s)));
            // every point has the shape (x^{q^{2m}}, x^{q^m}, x)
            let shapes: BTreeSet<Point2> = field
                .nonzero_elements()
                .map(|x| Point2::new(&field, component_point(&field, x, m)).unwrap())
                .collect();
            assert!(sp.points().iter().all(|s| shapes.contains(s)));
            if n == 3 {
                assert_eq!(c1.len(), sp.len());
            }
        }
    }

    #[test]
    fn exterior_sets() {
        let field = f(3, 3, 1);
        let cf = cf_canonical(&field, 1).unwrap();
        let pi = embed_subplane_in_component(&field, &cf).unwrap();
        let two = field.from_int(2);
        for t in [vec![Fe::ONE], vec![Fe::ONE, two]] {
            let x = exterior_set(&field, &cf, &t).unwrap();
            assert_eq!(x.len(), 28);
            assert!(verify_exterior(&field, x.points(), &pi));
        }
        assert_eq!(
            exterior_set(&field, &cf, &[two]).unwrap_err(),
            Error::MissingOne
        );
        // two points of π: their line meets π
        assert!(!verify_exterior(&field, &pi.points()[..2], &pi));
        // the original set is not exterior, it contains C_1
        assert!(!verify_exterior(&field, cf.points(), &pi));
    }

    #[test]
    fn exterior_pair_avoiding_subplane() {
        let field = f(2, 3, 1);
        let pi = crate::projspace::canonical_subplane(&field);
        let g = field.generator();
        let z = Fe::ZERO;
        let o = Fe::ONE;
        // the line x1 = g x2 + g² x3 has no F_2-rational points
        let a = Point2::new(&field, [g, o, z]).unwrap();
        let b = Point2::new(&field, [field.mul(g, g), z, o]).unwrap();
        let line = line_through(&field, &a, &b).unwrap();
        assert!(pi.points().iter().all(|s| !line.contains(&field, s)));
        assert!(verify_exterior(&field, &[a, b], &pi));
    }
}
