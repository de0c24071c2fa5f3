//! σ-sesquilinear forms ⟨x,y⟩ = X_t A Y^σ on F_{q^n}^2 and F_{q^n}^3.

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldTower};
use crate::linalg::{self, dot, mat_vec, Mat};
use crate::projspace::{enumerate_points, ProjPoint};

#[derive(Clone, Copy)]
pub struct SesquiForm<'f, const N: usize> {
    field: &'f FieldTower,
    a: Mat<N>,
}

pub type LineForm<'f> = SesquiForm<'f, 2>;
pub type PlaneForm<'f> = SesquiForm<'f, 3>;

impl<const N: usize> std::fmt::Debug for SesquiForm<'_, N> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<u32>> = self
            .a
            .iter()
            .map(|r| r.iter().map(|x| x.encoded()).collect())
            .collect();
        f.debug_struct("SesquiForm").field("matrix", &rows).finish()
    }
}

/// Left radical V^⊥ and right radical V^⊤, each as a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalPair<const N: usize> {
    pub left: Vec<[Fe; N]>,
    pub right: Vec<[Fe; N]>,
}

fn to_array<const N: usize>(v: &[Fe]) -> [Fe; N] {
    let mut out = [Fe::ZERO; N];
    out.copy_from_slice(v);
    out
}

impl<'f, const N: usize> SesquiForm<'f, N> {
    pub fn new(field: &'f FieldTower, a: Mat<N>) -> Self {
        SesquiForm { field, a }
    }

    /// Builds a form from N² encoded entries in row-major order.
    pub fn from_encoded(field: &'f FieldTower, entries: &[u64]) -> Result<Self> {
        if entries.len() != N * N {
            return Err(Error::DimensionMismatch {
                expected: N * N,
                found: entries.len(),
            });
        }
        let mut a = [[Fe::ZERO; N]; N];
        for (k, &v) in entries.iter().enumerate() {
            a[k / N][k % N] = field.elem(v)?;
        }
        Ok(SesquiForm { field, a })
    }

    pub fn field(&self) -> &'f FieldTower {
        self.field
    }

    pub fn matrix(&self) -> &Mat<N> {
        &self.a
    }

    pub fn encoded(&self) -> Vec<u32> {
        self.a.iter().flatten().map(|x| x.encoded()).collect()
    }

    /// A Y^σ.
    fn apply_right(&self, y: &[Fe; N]) -> [Fe; N] {
        mat_vec(self.field, &self.a, &y.map(|c| self.field.sigma(c)))
    }

    /// ⟨x, y⟩ = X_t A Y^σ.
    pub fn evaluate(&self, x: &[Fe; N], y: &[Fe; N]) -> Fe {
        dot(self.field, x, &self.apply_right(y))
    }

    /// As [`evaluate`](Self::evaluate), for vectors of unchecked length.
    pub fn evaluate_slices(&self, x: &[Fe], y: &[Fe]) -> Result<Fe> {
        for v in [x, y] {
            if v.len() != N {
                return Err(Error::DimensionMismatch {
                    expected: N,
                    found: v.len(),
                });
            }
        }
        Ok(self.evaluate(&to_array(x), &to_array(y)))
    }

    pub fn rank(&self) -> usize {
        linalg::mat_rank(self.field, &self.a)
    }

    pub fn is_degenerate(&self) -> bool {
        self.rank() < N
    }

    /// V^⊥ = null(A_t) and V^⊤ = null(B) with B = (a_ij^{σ^{-1}}).
    pub fn radicals(&self) -> RadicalPair<N> {
        let f = self.field;
        let at = linalg::transpose(&self.a);
        let b = linalg::map_entries(&self.a, |x| f.sigma_inv(x));
        let basis = |m: &Mat<N>| -> Vec<[Fe; N]> {
            let rows: Vec<Vec<Fe>> = m.iter().map(|r| r.to_vec()).collect();
            linalg::nullspace(f, &rows, N)
                .iter()
                .map(|v| to_array(v))
                .collect()
        };
        RadicalPair {
            left: basis(&at),
            right: basis(&b),
        }
    }

    pub fn is_absolute(&self, p: &ProjPoint<N>) -> bool {
        self.evaluate(p.coords(), p.coords()).is_zero()
    }

    /// Γ: the points X with X_t A X^σ = 0, in index order.
    pub fn absolute_points(&self) -> Vec<ProjPoint<N>> {
        enumerate_points::<N>(self.field)
            .into_iter()
            .filter(|p| self.is_absolute(p))
            .collect()
    }

    /// Exhaustive test of ⟨x,y⟩ = 0 ⇒ ⟨y,x⟩ = 0 over pairs of points.
    pub fn is_reflexive(&self) -> bool {
        let pts = enumerate_points::<N>(self.field);
        let images: Vec<[Fe; N]> = pts.iter().map(|p| self.apply_right(p.coords())).collect();
        for (i, x) in pts.iter().enumerate() {
            for (j, y) in pts.iter().enumerate().skip(i + 1) {
                let xy = dot(self.field, x.coords(), &images[j]).is_zero();
                let yx = dot(self.field, y.coords(), &images[i]).is_zero();
                if xy != yx {
                    return false;
                }
            }
        }
        true
    }

    /// A_t^{-1} A^σ, the matrix of the induced collineation.
    pub fn collineation_matrix(&self) -> Result<Mat<N>> {
        let at_inv = linalg::inverse(self.field, &linalg::transpose(&self.a))?;
        let a_sigma = linalg::map_entries(&self.a, |x| self.field.sigma(x));
        Ok(linalg::mat_mul(self.field, &at_inv, &a_sigma))
    }

    /// True iff A_t^{-1}A^σ is scalar and σ² = 1.
    pub fn is_polarity(&self) -> Result<bool> {
        let m = self.collineation_matrix()?;
        let d = m[0][0];
        let scalar = (0..N).all(|i| (0..N).all(|j| m[i][j] == if i == j { d } else { Fe::ZERO }));
        Ok(scalar && self.field.sigma_is_identity_power(2))
    }

    pub fn induced_collineation(&self) -> Result<Collineation<'f, N>> {
        Ok(Collineation {
            field: self.field,
            m: self.collineation_matrix()?,
            frob: 2 * self.field.m() as i64,
        })
    }

    /// The form of ρA.
    pub fn scaled(&self, rho: Fe) -> Self {
        SesquiForm::new(self.field, linalg::scale_mat(self.field, rho, &self.a))
    }

    /// The form M_t A M^σ in the coordinates X = M X'. Its absolute points
    /// are the preimages of Γ under X' ↦ M X'.
    pub fn transformed(&self, m: &Mat<N>) -> Self {
        let f = self.field;
        let m_sigma = linalg::map_entries(m, |x| f.sigma(x));
        let left = linalg::mat_mul(f, &linalg::transpose(m), &self.a);
        SesquiForm::new(f, linalg::mat_mul(f, &left, &m_sigma))
    }
}

/// The collineation X ↦ M X^{q^k} of PG(N-1, q^n).
#[derive(Clone, Copy, Debug)]
pub struct Collineation<'f, const N: usize> {
    field: &'f FieldTower,
    m: Mat<N>,
    frob: i64,
}

impl<'f, const N: usize> Collineation<'f, N> {
    pub fn new(field: &'f FieldTower, m: Mat<N>, frob: i64) -> Result<Self> {
        linalg::inverse(field, &m)?;
        Ok(Collineation { field, m, frob })
    }

    pub fn matrix(&self) -> &Mat<N> {
        &self.m
    }

    /// The exponent k of the accompanying automorphism x ↦ x^{q^k}.
    pub fn frobenius_exponent(&self) -> i64 {
        self.frob
    }

    pub fn apply(&self, p: &ProjPoint<N>) -> ProjPoint<N> {
        let v = p.coords().map(|x| self.field.frobenius_q(x, self.frob));
        ProjPoint::new(self.field, mat_vec(self.field, &self.m, &v)).expect("invertible")
    }

    pub fn fixed_points(&self) -> Vec<ProjPoint<N>> {
        enumerate_points::<N>(self.field)
            .into_iter()
            .filter(|p| self.apply(p) == *p)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, Mat3};
    use crate::projspace::Point2;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn mat_from(f: &FieldTower, raw: &[u32]) -> Mat3 {
        let mut a = [[Fe::ZERO; 3]; 3];
        for (k, &v) in raw.iter().enumerate() {
            a[k / 3][k % 3] = f.elem((v % f.order()) as u64).unwrap();
        }
        a
    }

    fn fields() -> Vec<FieldTower> {
        vec![
            FieldTower::new(2, 1, 2, 1).unwrap(),
            FieldTower::new(2, 1, 3, 1).unwrap(),
            FieldTower::new(2, 1, 3, 2).unwrap(),
            FieldTower::new(3, 1, 2, 1).unwrap(),
        ]
    }

    #[test]
    fn evaluate_identity() {
        let f = FieldTower::new(2, 1, 3, 1).unwrap();
        let form = PlaneForm::new(&f, identity());
        let e1 = [Fe::ONE, Fe::ZERO, Fe::ZERO];
        let e2 = [Fe::ZERO, Fe::ONE, Fe::ZERO];
        assert_eq!(form.evaluate(&e1, &e2), Fe::ZERO);
        assert_eq!(form.evaluate(&e1, &e1), Fe::ONE);
        assert!(matches!(
            form.evaluate_slices(&e1[..2], &e2),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn radicals_of_small_examples() {
        let f = FieldTower::new(2, 1, 3, 1).unwrap();
        let inv = PlaneForm::new(&f, identity());
        assert_eq!(
            inv.radicals(),
            RadicalPair {
                left: vec![],
                right: vec![]
            }
        );

        let g = f.generator();
        let z = Fe::ZERO;
        let rank1 = PlaneForm::new(&f, [[z; 3], [z; 3], [Fe::ONE, g, z]]);
        let r = rank1.radicals();
        assert_eq!((rank1.rank(), r.left.len(), r.right.len()), (1, 2, 2));

        // first column and last row zero: right radical e1, left radical e3
        let a = [[z, Fe::ONE, g], [z, g, Fe::ONE], [z, z, z]];
        let r = PlaneForm::new(&f, a).radicals();
        assert_eq!(r.right, vec![[Fe::ONE, z, z]]);
        assert_eq!(r.left, vec![[z, z, Fe::ONE]]);
    }

    #[test]
    fn reflexivity_of_classical_forms() {
        // σ = identity on F_9 (n = 1)
        let f = FieldTower::new(3, 2, 1, 1).unwrap();
        let g = f.generator();
        let z = Fe::ZERO;
        let o = Fe::ONE;
        let sym = PlaneForm::new(&f, [[o, g, z], [g, z, o], [z, o, g]]);
        assert!(sym.is_reflexive());
        let alt = LineForm::new(&f, [[z, g], [f.neg(g), z]]);
        assert!(alt.is_reflexive());
        assert!(alt.is_polarity().unwrap());

        // rank 2, σ ≠ 1
        let f = FieldTower::new(2, 1, 3, 1).unwrap();
        let g = f.generator();
        let a = [[z, g, o], [z, o, z], [z, z, z]];
        let form = PlaneForm::new(&f, a);
        assert!(!form.is_reflexive());
        let pts = crate::projspace::enumerate_points::<3>(&f);
        let witness = pts.iter().any(|x| {
            pts.iter().any(|y| {
                form.evaluate(x.coords(), y.coords()).is_zero()
                    != form.evaluate(y.coords(), x.coords()).is_zero()
            })
        });
        assert!(witness);
    }

    #[test]
    fn hermitian_forms_are_polarities() {
        // n = 2, σ: x ↦ x^q is the involution
        let f = FieldTower::new(3, 1, 2, 1).unwrap();
        let g = f.generator();
        let o = Fe::ONE;
        // A = (A_t)^σ: real diagonal, conjugate off-diagonal pairs
        let a = [
            [o, g, Fe::ZERO],
            [f.sigma(g), f.neg(o), o],
            [Fe::ZERO, o, Fe::ZERO],
        ];
        let form = PlaneForm::new(&f, a);
        assert!(form.is_polarity().unwrap());
        assert!(form.is_reflexive());
        // identity with σ² ≠ 1
        let f = FieldTower::new(2, 1, 3, 1).unwrap();
        assert!(!PlaneForm::new(&f, identity()).is_polarity().unwrap());
        let z = Fe::ZERO;
        assert_eq!(
            PlaneForm::new(&f, [[z; 3]; 3]).is_polarity(),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn polarity_matches_reflexivity_exhaustively_on_lines() {
        for f in [
            FieldTower::new(2, 1, 2, 1).unwrap(),
            FieldTower::new(3, 1, 2, 1).unwrap(),
            FieldTower::new(2, 1, 3, 1).unwrap(),
        ] {
            let q = f.order() as u64;
            for code in 0..q.pow(4) {
                let mut c = code;
                let mut a = [[Fe::ZERO; 2]; 2];
                for k in 0..4 {
                    a[k / 2][k % 2] = f.elem(c % q).unwrap();
                    c /= q;
                }
                let form = LineForm::new(&f, a);
                if let Ok(pol) = form.is_polarity() {
                    assert_eq!(pol, form.is_reflexive(), "{form:?}");
                }
            }
        }
    }

    #[test]
    fn hermitian_curve_in_pg2_4() {
        let f = FieldTower::new(2, 1, 2, 1).unwrap();
        let gamma = PlaneForm::new(&f, identity()).absolute_points();
        // brute force: x^3 + y^3 + z^3 = 0 over the 21 points
        let brute = crate::projspace::enumerate_points::<3>(&f)
            .into_iter()
            .filter(|p| {
                p.coords()
                    .iter()
                    .fold(Fe::ZERO, |acc, &x| f.add(acc, f.pow(x, 3)))
                    .is_zero()
            })
            .count();
        assert_eq!(gamma.len(), brute);
        assert_eq!(gamma.len(), 9);
    }

    #[test]
    fn identity_collineation_and_subplane_fixing() {
        let f = FieldTower::new(2, 1, 2, 1).unwrap();
        let c = PlaneForm::new(&f, identity())
            .induced_collineation()
            .unwrap();
        // σ² = id on F_4, so f is the identity
        assert_eq!(c.fixed_points().len(), 21);
        // in PG(2,8), σ² ≠ 1 and A = I fixes exactly PG(2,2)
        let f = FieldTower::new(2, 1, 3, 1).unwrap();
        let c = PlaneForm::new(&f, identity())
            .induced_collineation()
            .unwrap();
        let fixed: BTreeSet<Point2> = c.fixed_points().into_iter().collect();
        let sub: BTreeSet<Point2> = crate::projspace::canonical_subplane(&f)
            .points()
            .iter()
            .copied()
            .collect();
        assert_eq!(fixed, sub);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn semilinearity(fi in 0usize..4, raw in prop::collection::vec(any::<u32>(), 9), xs in prop::collection::vec(any::<u32>(), 7)) {
            let fs = fields();
            let f = &fs[fi];
            let form = PlaneForm::new(f, mat_from(f, &raw));
            let el = |v: u32| f.elem((v % f.order()) as u64).unwrap();
            let x = [el(xs[0]), el(xs[1]), el(xs[2])];
            let y = [el(xs[3]), el(xs[4]), el(xs[5])];
            let a = el(xs[6]);
            let ax = x.map(|c| f.mul(a, c));
            let ay = y.map(|c| f.mul(a, c));
            prop_assert_eq!(form.evaluate(&ax, &y), f.mul(a, form.evaluate(&x, &y)));
            prop_assert_eq!(form.evaluate(&x, &ay), f.mul(f.sigma(a), form.evaluate(&x, &y)));
        }

        #[test]
        fn radical_dimensions_agree(fi in 0usize..4, raw in prop::collection::vec(any::<u32>(), 9), zero_mask in 0u32..512) {
            let fs = fields();
            let f = &fs[fi];
            let mut a = mat_from(f, &raw);
            for k in 0..9 {
                if zero_mask >> k & 1 == 1 {
                    a[k / 3][k % 3] = Fe::ZERO;
                }
            }
            let form = PlaneForm::new(f, a);
            let r = form.radicals();
            prop_assert_eq!(r.left.len(), r.right.len());
            prop_assert_eq!(r.left.len(), 3 - form.rank());
            let b = linalg::map_entries(&a, |x| f.sigma_inv(x));
            prop_assert_eq!(linalg::mat_rank(f, &b), form.rank());
            let unit = |i: usize| {
                let mut e = [Fe::ZERO; 3];
                e[i] = Fe::ONE;
                e
            };
            let left_ok = r.left.iter().all(|v| (0..3).all(|j| form.evaluate(v, &unit(j)).is_zero()));
            let right_ok = r.right.iter().all(|v| (0..3).all(|i| form.evaluate(&unit(i), v).is_zero()));
            prop_assert!(left_ok && right_ok);
        }

        #[test]
        fn gamma_invariances(fi in 0usize..4, raw in prop::collection::vec(any::<u32>(), 9), mraw in prop::collection::vec(any::<u32>(), 9), rho in 1u32..1000) {
            let fs = fields();
            let f = &fs[fi];
            let form = PlaneForm::new(f, mat_from(f, &raw));
            let gamma = form.absolute_points();
            let rho = f.elem((1 + rho % (f.order() - 1)) as u64).unwrap();
            prop_assert_eq!(&form.scaled(rho).absolute_points(), &gamma);
            let m = mat_from(f, &mraw);
            if linalg::inverse(f, &m).is_ok() {
                let moved = form.transformed(&m).absolute_points();
                prop_assert_eq!(moved.len(), gamma.len());
                let image: BTreeSet<Point2> = moved
                    .iter()
                    .map(|p| Point2::new(f, mat_vec(f, &m, p.coords())).unwrap())
                    .collect();
                let expect: BTreeSet<Point2> = gamma.iter().copied().collect();
                prop_assert_eq!(image, expect);
            }
        }

        #[test]
        fn collineation_permutes_gamma(fi in 0usize..4, raw in prop::collection::vec(any::<u32>(), 9)) {
            let fs = fields();
            let f = &fs[fi];
            let form = PlaneForm::new(f, mat_from(f, &raw));
            if let Ok(c) = form.induced_collineation() {
                let pts = crate::projspace::enumerate_points::<3>(f);
                let images: BTreeSet<Point2> = pts.iter().map(|p| c.apply(p)).collect();
                prop_assert_eq!(images.len(), pts.len());
                for p in &pts {
                    prop_assert_eq!(form.is_absolute(&c.apply(p)), form.is_absolute(p));
                }
                prop_assert_eq!(form.is_polarity().unwrap(), form.is_reflexive());
            }
        }
    }
}
