//! Classification of absolute-point sets on a line and in the plane.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cfsets::PencilCollineation;
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldTower};
use crate::linalg::{self, cross};
use crate::projspace::{is_fq_subline, line_through, Plane, Point1, Point2, ProjLine};
use crate::sesqui::{LineForm, PlaneForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    Empty,
    OnePoint,
    TwoPoints,
    Subline,
    /// The zero form: every point is absolute.
    WholeLine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineClassification {
    pub kind: LineKind,
    pub points: Vec<Point1>,
    /// |Γ| ∉ {0, 2, q+1}.
    pub degenerate: bool,
}

/// Matches Γ of a form on PG(1,q^n) to the empty set, a point, two points,
/// an F_q-subline, or the whole line.
pub fn classify_line_form(form: &LineForm<'_>) -> Result<LineClassification> {
    let field = form.field();
    let points = form.absolute_points();
    let q1 = field.q() as usize + 1;
    let all = field.order() as usize + 1;
    let kind = match points.len() {
        0 => LineKind::Empty,
        1 => LineKind::OnePoint,
        2 => LineKind::TwoPoints,
        k if k == q1 && is_fq_subline(field, &points)? => LineKind::Subline,
        k if k == all && form.matrix().iter().flatten().all(|x| x.is_zero()) => LineKind::WholeLine,
        k => {
            return Err(Error::HypothesisViolation(format!(
                "{k} absolute points on PG(1,{})",
                field.order()
            )))
        }
    };
    let degenerate = ![0, 2, q1].contains(&points.len());
    Ok(LineClassification {
        kind,
        points,
        degenerate,
    })
}

/// Number of points of `gamma` on every line, indexed like the lines of `plane`.
pub fn line_intersections(plane: &Plane<'_>, gamma: &[Point2]) -> Vec<usize> {
    let field = plane.field();
    let mut member = vec![false; plane.num_points()];
    for p in gamma {
        member[p.index(field)] = true;
    }
    plane.intersection_sizes(&member)
}

/// Histogram of |ℓ ∩ Γ| over all lines ℓ.
pub fn line_spectrum(plane: &Plane<'_>, gamma: &[Point2]) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for s in line_intersections(plane, gamma) {
        *hist.entry(s).or_insert(0) += 1;
    }
    hist
}

/// Intersection sizes outside {0, 1, 2, q+1, q^n+1}, and q+1 intersections
/// that are not F_q-sublines.
pub fn spectrum_violations(plane: &Plane<'_>, gamma: &[Point2]) -> Vec<String> {
    let field = plane.field();
    let q1 = field.q() as usize + 1;
    let full = field.order() as usize + 1;
    let sizes = line_intersections(plane, gamma);
    let member: BTreeSet<usize> = gamma.iter().map(|p| p.index(field)).collect();
    let mut out = Vec::new();
    for (li, &s) in sizes.iter().enumerate() {
        if ![0, 1, 2, q1, full].contains(&s) {
            out.push(format!("line {li} meets Γ in {s} points"));
        } else if s == q1 && q1 != full {
            let pts: Vec<Point2> = plane
                .line_point_indices(li)
                .iter()
                .filter(|&&i| member.contains(&(i as usize)))
                .map(|&i| plane.points()[i as usize])
                .collect();
            if !matches!(is_fq_subline(field, &pts), Ok(true)) {
                out.push(format!("line {li}: {s} points not on an F_q-subline"));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaneKind {
    /// The zero form.
    WholePlane,
    /// Rank 1: Γ is the union of the left and right radical lines.
    UnionTwoLines {
        left: ProjLine,
        right: ProjLine,
    },
    /// Rank 2 with V^⊥ = V^⊤: cone with vertex R over Γ of a line not on R.
    ConeOverSigmaQuadric {
        vertex: Point2,
        base: LineKind,
        base_size: usize,
    },
    DegenerateCf {
        r: Point2,
        l: Point2,
    },
    Cf {
        r: Point2,
        l: Point2,
    },
    KestenbandNondegenerate,
}

impl PlaneKind {
    pub fn name(&self) -> &'static str {
        match self {
            PlaneKind::WholePlane => "whole-plane",
            PlaneKind::UnionTwoLines { .. } => "union-two-lines",
            PlaneKind::ConeOverSigmaQuadric { .. } => "cone",
            PlaneKind::DegenerateCf { .. } => "degenerate-cf",
            PlaneKind::Cf { .. } => "cf",
            PlaneKind::KestenbandNondegenerate => "kestenband",
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlaneClassification {
    pub kind: PlaneKind,
    pub rank: usize,
    pub gamma: Vec<Point2>,
}

impl PlaneClassification {
    /// |Γ| predicted by the kind, if the kind determines it.
    pub fn expected_cardinality(&self, field: &FieldTower) -> Option<usize> {
        let qn = field.order() as usize;
        match &self.kind {
            PlaneKind::WholePlane => Some(qn * qn + qn + 1),
            PlaneKind::UnionTwoLines { left, right } => {
                Some(if left == right { qn + 1 } else { 2 * qn + 1 })
            }
            PlaneKind::ConeOverSigmaQuadric { base_size, .. } => Some(1 + qn * base_size),
            PlaneKind::DegenerateCf { .. } => Some(2 * qn + 1),
            PlaneKind::Cf { .. } => Some(qn + 1),
            PlaneKind::KestenbandNondegenerate => None,
        }
    }
}

fn line_from_basis(field: &FieldTower, basis: &[[Fe; 3]]) -> ProjLine {
    ProjLine::new(field, cross(field, &basis[0], &basis[1])).expect("independent basis")
}

/// Columns v, then the first two standard vectors completing a basis.
fn complete_frame(field: &FieldTower, v: &[Fe; 3]) -> linalg::Mat3 {
    let e = |k: usize| {
        let mut x = [Fe::ZERO; 3];
        x[k] = Fe::ONE;
        x
    };
    for (i, j) in [(1, 2), (0, 2), (0, 1)] {
        let cols = [*v, e(i), e(j)];
        if !linalg::det3(field, &cols).is_zero() {
            return linalg::transpose(&cols);
        }
    }
    unreachable!("v is non-zero")
}

pub fn classify_plane_form(form: &PlaneForm<'_>) -> Result<PlaneClassification> {
    let field = form.field();
    let rank = form.rank();
    let gamma = form.absolute_points();
    let kind = match rank {
        0 => PlaneKind::WholePlane,
        1 => {
            let rad = form.radicals();
            PlaneKind::UnionTwoLines {
                left: line_from_basis(field, &rad.left),
                right: line_from_basis(field, &rad.right),
            }
        }
        2 => {
            let rad = form.radicals();
            let r = Point2::new(field, rad.right[0])?;
            let l = Point2::new(field, rad.left[0])?;
            if r == l {
                let frame = complete_frame(field, r.coords());
                let s = *form.transformed(&frame).matrix();
                let base = LineForm::new(field, [[s[1][1], s[1][2]], [s[2][1], s[2][2]]]);
                let base = classify_line_form(&base)?;
                PlaneKind::ConeOverSigmaQuadric {
                    vertex: r,
                    base: base.kind,
                    base_size: base.points.len(),
                }
            } else if PencilCollineation::from_form(form)?.fixes_join() {
                PlaneKind::DegenerateCf { r, l }
            } else {
                PlaneKind::Cf { r, l }
            }
        }
        _ => PlaneKind::KestenbandNondegenerate,
    };
    Ok(PlaneClassification { kind, rank, gamma })
}

/// Number of x ∈ F_{q^n} with r x^{q^m+1} + ρ x + s = 0.
pub fn count_trinomial_roots(field: &FieldTower, r: Fe, rho: Fe, s: Fe, m: u32) -> Result<usize> {
    if r.is_zero() {
        return Err(Error::ZeroLeadingCoefficient);
    }
    let k = m as i64;
    Ok(field
        .elements()
        .filter(|&x| {
            let t = field.mul(r, field.mul(x, field.frobenius_q(x, k)));
            field.add(field.add(t, field.mul(rho, x)), s).is_zero()
        })
        .count())
}

/// No three points of `s` are collinear.
pub fn is_arc(field: &FieldTower, s: &[Point2]) -> bool {
    let mut pts = s.to_vec();
    pts.sort();
    pts.dedup();
    let mut on_line: BTreeMap<ProjLine, usize> = BTreeMap::new();
    for (i, a) in pts.iter().enumerate() {
        on_line.clear();
        // lines through a and a later point; a repeat means three collinear
        for b in &pts[i + 1..] {
            let l = line_through(field, a, b).expect("distinct");
            let c = on_line.entry(l).or_insert(0);
            *c += 1;
            if *c == 2 {
                return false;
            }
        }
    }
    true
}

/// One admissible |Γ| for a non-degenerate form, with a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MenuEntry {
    pub value: i64,
    pub label: &'static str,
    /// Whether the value is admissible for diagonal A.
    pub diagonal: bool,
}

/// The cardinalities allowed for |Γ| of a rank-3 form over F_{q^N}.
pub fn kestenband_menu(q: u32, degree: u32) -> Result<Vec<MenuEntry>> {
    let q = q as i64;
    let entry = |value, label, diagonal| MenuEntry {
        value,
        label,
        diagonal,
    };
    if degree < 2 {
        return Err(Error::BadDegreeParity { degree });
    }
    let k = degree / 2;
    let top = q.pow(degree);
    if degree % 2 == 1 {
        let step = q.pow(k + 1);
        return Ok(vec![
            entry(top - step + 1, "eps=-1", true),
            entry(top + 1, "eps=0", true),
            entry(top + step + 1, "eps=+1", true),
        ]);
    }
    let mq = (-q).pow(k);
    let mq1 = (-q).pow(k + 1);
    let mut menu = vec![
        entry(top + 1 + mq1 * (q - 1), "diagonal-a", true),
        entry(top + 1 + mq * (q - 1), "diagonal-b", true),
        entry(top + 1 - 2 * mq, "diagonal-c", true),
        entry(top - mq1 + 1, "general-a", false),
        entry(top - mq + 1, "general-b", false),
        entry(top + 1, "general-c", false),
    ];
    if q % 2 == 1 {
        let qk = q.pow(k);
        menu.push(entry(top + qk + 1, "general-d", false));
        menu.push(entry(top - qk + 1, "general-e", false));
    }
    Ok(menu)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KestenbandProfile {
    pub cardinality: usize,
    /// ε with |Γ| = q^N + ε q^{(N+1)/2} + 1 for odd N.
    pub epsilon: Option<i64>,
    /// Labels of the menu entries matching |Γ|.
    pub family: String,
    pub fixed_in: usize,
    pub fixed_out: usize,
    /// For fixed_in = q+1: whether those points are collinear.
    pub fixed_in_collinear: Option<bool>,
    pub violations: Vec<String>,
}

/// Raw counts from which a profile is judged.
#[derive(Clone, Copy, Debug)]
pub struct ProfileInput {
    pub cardinality: usize,
    pub fixed_in: usize,
    pub fixed_out: usize,
    pub fixed_in_collinear: Option<bool>,
    pub diagonal: bool,
}

/// Checks the counts against the cardinality menu and, for odd degree, the
/// fixed-point case table. Violations are reported, never raised.
pub fn judge_profile(q: u32, degree: u32, input: ProfileInput) -> Result<KestenbandProfile> {
    let menu = kestenband_menu(q, degree)?;
    let card = input.cardinality as i64;
    let allowed: Vec<&MenuEntry> = menu
        .iter()
        .filter(|e| !input.diagonal || e.diagonal)
        .collect();
    let labels: Vec<&str> = allowed
        .iter()
        .filter(|e| e.value == card)
        .map(|e| e.label)
        .collect();
    let mut violations = Vec::new();
    if labels.is_empty() {
        violations.push(format!("|Γ| = {card} is not in the cardinality menu"));
    }
    let mut epsilon = None;
    if degree % 2 == 1 {
        let step = (q as i64).pow(degree / 2 + 1);
        let diff = card - (q as i64).pow(degree) - 1;
        if diff % step == 0 && (-1..=1).contains(&(diff / step)) {
            epsilon = Some(diff / step);
        }
        if let Some(eps) = epsilon {
            violations.extend(odd_case_table(q, eps, &input));
        }
    }
    Ok(KestenbandProfile {
        cardinality: input.cardinality,
        epsilon,
        family: labels.join("|"),
        fixed_in: input.fixed_in,
        fixed_out: input.fixed_out,
        fixed_in_collinear: input.fixed_in_collinear,
        violations,
    })
}

fn odd_case_table(q: u32, eps: i64, x: &ProfileInput) -> Vec<String> {
    let q1 = q as usize + 1;
    let q2 = (q * q) as usize;
    let mut v = Vec::new();
    let mut need = |ok: bool, what: &str| {
        if !ok {
            v.push(format!(
                "fixed points ({} on Γ, {} off) with ε = {eps}: expected {what}",
                x.fixed_in, x.fixed_out
            ));
        }
    };
    let collinear = x.fixed_in_collinear == Some(true);
    if q % 2 == 1 {
        match x.fixed_out {
            0 => need(
                eps == 0 && x.fixed_in == 1,
                "ε = 0 and one fixed point on Γ",
            ),
            1 => {
                need(
                    [0, 1, 2, q1].contains(&x.fixed_in),
                    "0, 1, 2 or q+1 fixed points on Γ",
                );
                if x.fixed_in == 1 {
                    need(eps != 0, "ε = ±1");
                } else {
                    need(eps == 0, "ε = 0");
                }
                if x.fixed_in == q1 {
                    need(collinear, "collinear fixed points on Γ");
                }
            }
            _ => need(
                eps == 0 && x.fixed_in == q1 && x.fixed_out == q2,
                "ε = 0 with PG(2,q) fixed pointwise",
            ),
        }
    } else if x.fixed_out == 0 {
        need(
            eps != 0 && x.fixed_in == 1,
            "ε = ±1 and one fixed point on Γ",
        );
    } else {
        need(eps == 0, "ε = 0");
        need(
            [0, 2, q1].contains(&x.fixed_in),
            "0, 2 or q+1 fixed points on Γ",
        );
        if x.fixed_in == q1 {
            need(
                x.fixed_out == q2 && collinear,
                "PG(2,q) fixed pointwise, q+1 collinear on Γ",
            );
        }
    }
    v
}

pub fn all_collinear(field: &FieldTower, pts: &[Point2]) -> bool {
    if pts.len() < 3 {
        return true;
    }
    let Ok(l) = line_through(field, &pts[0], &pts[1]) else {
        return false;
    };
    pts.iter().all(|p| l.contains(field, p))
}

pub fn is_diagonal<const N: usize>(a: &linalg::Mat<N>) -> bool {
    (0..N).all(|i| (0..N).all(|j| i == j || a[i][j].is_zero()))
}

/// |Γ| and the fixed points of X ↦ A_t^{-1}A^σ X^{σ²}, judged against the
/// theorems for the field degree.
pub fn kestenband_profile(form: &PlaneForm<'_>) -> Result<KestenbandProfile> {
    let field = form.field();
    let coll = form.induced_collineation()?;
    if field.n() < 2 {
        return Err(Error::BadDegreeParity { degree: field.n() });
    }
    let gamma = form.absolute_points();
    let fixed = coll.fixed_points();
    let (fin, fout): (Vec<Point2>, Vec<Point2>) =
        fixed.into_iter().partition(|p| form.is_absolute(p));
    let q1 = field.q() as usize + 1;
    let input = ProfileInput {
        cardinality: gamma.len(),
        fixed_in: fin.len(),
        fixed_out: fout.len(),
        fixed_in_collinear: (fin.len() == q1).then(|| all_collinear(field, &fin)),
        diagonal: is_diagonal(form.matrix()),
    };
    judge_profile(field.q(), field.n(), input)
}
