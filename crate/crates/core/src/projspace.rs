//! Points, lines, pencils, sublines and subplanes of PG(1,q^n) and PG(2,q^n).
//!
//! Points are stored with their first non-zero coordinate equal to 1. With
//! that normalization the derived ordering is lexicographic on encoded
//! coordinates and coincides with the enumeration order of
//! [`enumerate_points`], so [`ProjPoint::index`] is a closed-form rank.

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldTower};
use crate::linalg::{self, cross, dot};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint<const N: usize>([Fe; N]);

pub type Point1 = ProjPoint<2>;
pub type Point2 = ProjPoint<3>;

/// Scales `v` so its first non-zero entry is 1.
pub fn normalize<const N: usize>(field: &FieldTower, v: &[Fe; N]) -> Option<[Fe; N]> {
    let lead = v.iter().copied().find(|x| !x.is_zero())?;
    if lead == Fe::ONE {
        return Some(*v);
    }
    let inv = field.inv(lead).expect("non-zero");
    Some(v.map(|x| field.mul(x, inv)))
}

/// Number of points of PG(N-1, Q).
pub fn point_count(order: u32, dim_plus_one: usize) -> usize {
    let q = order as usize;
    (0..dim_plus_one).map(|i| q.pow(i as u32)).sum()
}

impl<const N: usize> ProjPoint<N> {
    pub fn new(field: &FieldTower, coords: [Fe; N]) -> Result<Self> {
        normalize(field, &coords)
            .map(ProjPoint)
            .ok_or(Error::ZeroVector)
    }

    /// Wraps coordinates already in normalized form.
    pub(crate) fn from_normalized(coords: [Fe; N]) -> Self {
        debug_assert!(coords.iter().find(|x| !x.is_zero()) == Some(&Fe::ONE));
        ProjPoint(coords)
    }

    pub fn from_encoded(field: &FieldTower, coords: [u64; N]) -> Result<Self> {
        let mut v = [Fe::ZERO; N];
        for (slot, &c) in v.iter_mut().zip(&coords) {
            *slot = field.elem(c)?;
        }
        Self::new(field, v)
    }

    pub fn coords(&self) -> &[Fe; N] {
        &self.0
    }

    /// Position in [`enumerate_points`].
    pub fn index(&self, field: &FieldTower) -> usize {
        let q = field.order() as usize;
        let k = self
            .0
            .iter()
            .position(|x| !x.is_zero())
            .expect("normalized");
        let mut idx = point_count(field.order(), N - 1 - k);
        for i in k + 1..N {
            idx += self.0[i].encoded() as usize * q.pow((N - 1 - i) as u32);
        }
        idx
    }

    pub fn from_index(field: &FieldTower, mut idx: usize) -> Self {
        let q = field.order() as usize;
        let mut k = N - 1;
        loop {
            let block = q.pow((N - 1 - k) as u32);
            if idx < block {
                break;
            }
            idx -= block;
            k -= 1;
        }
        let mut v = [Fe::ZERO; N];
        v[k] = Fe::ONE;
        for i in (k + 1..N).rev() {
            v[i] = Fe::from_raw((idx % q) as u32);
            idx /= q;
        }
        ProjPoint(v)
    }

    /// Coordinate-wise image under x ↦ x^{q^k}.
    pub fn frobenius(&self, field: &FieldTower, k: i64) -> Self {
        ProjPoint(self.0.map(|x| field.frobenius_q(x, k)))
    }
}

/// All points of PG(N-1, q^n) in index order.
pub fn enumerate_points<const N: usize>(field: &FieldTower) -> Vec<ProjPoint<N>> {
    (0..point_count(field.order(), N))
        .map(|i| ProjPoint::from_index(field, i))
        .collect()
}

/// The line u₁x₁+u₂x₂+u₃x₃ = 0, stored by its normalized dual coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine(Point2);

impl ProjLine {
    pub fn new(field: &FieldTower, dual: [Fe; 3]) -> Result<Self> {
        Point2::new(field, dual).map(ProjLine)
    }

    pub fn dual(&self) -> &[Fe; 3] {
        self.0.coords()
    }

    pub fn index(&self, field: &FieldTower) -> usize {
        self.0.index(field)
    }

    pub fn from_index(field: &FieldTower, idx: usize) -> Self {
        ProjLine(Point2::from_index(field, idx))
    }

    pub fn contains(&self, field: &FieldTower, p: &Point2) -> bool {
        dot(field, self.dual(), p.coords()).is_zero()
    }

    /// Points of the line in index order.
    pub fn points(&self, field: &FieldTower) -> Vec<Point2> {
        let [b0, b1] = line_basis(field, self.dual());
        let mut pts: Vec<Point2> = std::iter::once(Point2::from_normalized(b1))
            .chain(field.elements().map(|t| {
                let v = [0, 1, 2].map(|i| field.add(b0[i], field.mul(t, b1[i])));
                Point2::new(field, v).expect("independent basis")
            }))
            .collect();
        pts.sort();
        pts
    }

    /// Intersection point of two distinct lines.
    pub fn meet(&self, field: &FieldTower, other: &ProjLine) -> Result<Point2> {
        Point2::new(field, cross(field, self.dual(), other.dual()))
            .map_err(|_| Error::CoincidentPoints)
    }
}

/// Two normalized points spanning the line with dual coordinates `u`.
fn line_basis(field: &FieldTower, u: &[Fe; 3]) -> [[Fe; 3]; 2] {
    let rows = vec![u.to_vec()];
    let ns = linalg::nullspace(field, &rows, 3);
    let to_arr = |v: &Vec<Fe>| normalize(field, &[v[0], v[1], v[2]]).expect("non-zero");
    [to_arr(&ns[0]), to_arr(&ns[1])]
}

pub fn line_through(field: &FieldTower, p: &Point2, q: &Point2) -> Result<ProjLine> {
    ProjLine::new(field, cross(field, p.coords(), q.coords())).map_err(|_| Error::CoincidentPoints)
}

pub fn points_on(field: &FieldTower, line: &ProjLine) -> Vec<Point2> {
    line.points(field)
}

pub fn are_collinear(field: &FieldTower, a: &Point2, b: &Point2, c: &Point2) -> bool {
    linalg::det3(field, &[*a.coords(), *b.coords(), *c.coords()]).is_zero()
}

/// Precomputed incidence structure of PG(2,q^n).
pub struct Plane<'f> {
    field: &'f FieldTower,
    points: Vec<Point2>,
    line_points: Vec<Vec<u32>>,
}

impl<'f> Plane<'f> {
    pub fn new(field: &'f FieldTower) -> Self {
        let points = enumerate_points::<3>(field);
        let line_points = (0..points.len())
            .map(|li| {
                ProjLine::from_index(field, li)
                    .points(field)
                    .iter()
                    .map(|p| p.index(field) as u32)
                    .collect()
            })
            .collect();
        Plane {
            field,
            points,
            line_points,
        }
    }

    pub fn field(&self) -> &'f FieldTower {
        self.field
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.line_points.len()
    }

    pub fn line(&self, idx: usize) -> ProjLine {
        ProjLine::from_index(self.field, idx)
    }

    /// Point indices on the line with the given index, ascending.
    pub fn line_point_indices(&self, idx: usize) -> &[u32] {
        &self.line_points[idx]
    }

    pub fn line_index_through(&self, a: usize, b: usize) -> Result<usize> {
        Ok(line_through(self.field, &self.points[a], &self.points[b])?.index(self.field))
    }

    /// For each line, the number of its points whose flag is set.
    pub fn intersection_sizes(&self, member: &[bool]) -> Vec<usize> {
        self.line_points
            .iter()
            .map(|pts| pts.iter().filter(|&&i| member[i as usize]).count())
            .collect()
    }
}

/// The q^n+1 lines through a point.
#[derive(Clone, Debug)]
pub struct Pencil {
    center: Point2,
    lines: Vec<ProjLine>,
}

impl Pencil {
    pub fn new(field: &FieldTower, center: Point2) -> Self {
        // join the centre to the points of a coordinate line x_k = 0 missing it
        let k = center
            .coords()
            .iter()
            .position(|x| !x.is_zero())
            .expect("normalized");
        let mut dual = [Fe::ZERO; 3];
        dual[k] = Fe::ONE;
        let base = ProjLine::new(field, dual).expect("non-zero");
        let mut lines: Vec<ProjLine> = base
            .points(field)
            .iter()
            .map(|p| line_through(field, &center, p).expect("centre off base line"))
            .collect();
        lines.sort();
        Pencil { center, lines }
    }

    pub fn center(&self) -> &Point2 {
        &self.center
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }
}

/// Coefficients (a, b) with x = a·u + b·v, or None if x is outside ⟨u, v⟩.
fn coords_in_span<const N: usize>(
    field: &FieldTower,
    u: &[Fe; N],
    v: &[Fe; N],
    x: &[Fe; N],
) -> Option<(Fe, Fe)> {
    for i in 0..N {
        for j in i + 1..N {
            let det = field.sub(field.mul(u[i], v[j]), field.mul(u[j], v[i]));
            if det.is_zero() {
                continue;
            }
            let inv = field.inv(det).expect("non-zero");
            let a = field.mul(field.sub(field.mul(x[i], v[j]), field.mul(x[j], v[i])), inv);
            let b = field.mul(field.sub(field.mul(u[i], x[j]), field.mul(u[j], x[i])), inv);
            let ok = (0..N).all(|k| field.add(field.mul(a, u[k]), field.mul(b, v[k])) == x[k]);
            return ok.then_some((a, b));
        }
    }
    None
}

/// Whether `pts` (q+1 distinct collinear points) form an F_q-subline.
///
/// The first three points are sent to ∞, 0 and 1 of a coordinatization
/// λu + μv of their line; the set is a subline iff every other point has a
/// parameter λ/μ in F_q.
pub fn is_fq_subline<const N: usize>(field: &FieldTower, pts: &[ProjPoint<N>]) -> Result<bool> {
    let mut set = pts.to_vec();
    set.sort();
    set.dedup();
    let expected = field.q() as usize + 1;
    if set.len() != expected {
        return Err(Error::WrongCardinality {
            expected,
            found: set.len(),
        });
    }
    let (p0, p1, p2) = (set[0].coords(), set[1].coords(), set[2].coords());
    let (a, b) = coords_in_span(field, p0, p1, p2).ok_or(Error::NotCollinear)?;
    // p2 is distinct from p0 and p1, so both a and b are non-zero
    let u = p0.map(|x| field.mul(a, x));
    let v = p1.map(|x| field.mul(b, x));
    let mut subline = true;
    for p in &set[3..] {
        let (l, m) = coords_in_span(field, &u, &v, p.coords()).ok_or(Error::NotCollinear)?;
        if !field.is_in_subfield(field.div(l, m).expect("p differs from p0")) {
            subline = false;
        }
    }
    Ok(subline)
}

/// A subgeometry PG(2,q) of PG(2,q^n) given by a frame.
#[derive(Clone, Debug)]
pub struct Subplane {
    frame: [Point2; 4],
    basis: [[Fe; 3]; 3],
    points: Vec<Point2>,
}

impl Subplane {
    /// The PG(2,q) spanned over F_q by suitably scaled P1, P2, P3 with
    /// P4 = P1 + P2 + P3.
    pub fn from_frame(field: &FieldTower, frame: [Point2; 4]) -> Result<Self> {
        for skip in 0..4 {
            let tri: Vec<&Point2> = (0..4).filter(|&i| i != skip).map(|i| &frame[i]).collect();
            if are_collinear(field, tri[0], tri[1], tri[2]) {
                return Err(Error::DegenerateFrame);
            }
        }
        // columns P1, P2, P3; solve for λ with Σ λ_i P_i = P4
        let cols = linalg::transpose(&[*frame[0].coords(), *frame[1].coords(), *frame[2].coords()]);
        let lambda = linalg::solve(field, &cols, frame[3].coords())?;
        let basis = [0, 1, 2].map(|i| frame[i].coords().map(|x| field.mul(lambda[i], x)));
        let sub = field.subfield_elements();
        let mut points = Vec::new();
        for c in enumerate_fq_points(&sub) {
            let v = [0, 1, 2].map(|k| {
                (0..3).fold(Fe::ZERO, |acc, i| {
                    field.add(acc, field.mul(c[i], basis[i][k]))
                })
            });
            points.push(Point2::new(field, v)?);
        }
        points.sort();
        Ok(Subplane {
            frame,
            basis,
            points,
        })
    }

    pub fn frame(&self) -> &[Point2; 4] {
        &self.frame
    }

    /// The scaled frame vectors b₁, b₂, b₃ with b₁+b₂+b₃ representing P4.
    pub fn basis(&self) -> &[[Fe; 3]; 3] {
        &self.basis
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
}

/// Normalized coordinate triples of PG(2,q) over the given subfield list.
fn enumerate_fq_points(sub: &[Fe]) -> Vec<[Fe; 3]> {
    let mut out = vec![[Fe::ZERO, Fe::ZERO, Fe::ONE]];
    for &c in sub {
        out.push([Fe::ZERO, Fe::ONE, c]);
    }
    for &b in sub {
        for &c in sub {
            out.push([Fe::ONE, b, c]);
        }
    }
    out
}

/// The subplane of points with F_q coordinates, framed by e₁, e₂, e₃, (1,1,1).
pub fn canonical_subplane(field: &FieldTower) -> Subplane {
    let z = Fe::ZERO;
    let o = Fe::ONE;
    let frame = [[o, z, z], [z, o, z], [z, z, o], [o, o, o]].map(Point2::from_normalized);
    Subplane::from_frame(field, frame).expect("standard frame")
}
