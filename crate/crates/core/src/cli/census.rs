//! Census kernel: per-matrix records and the parallel driver.

use std::collections::BTreeMap;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cfsets::{steiner_generate, PencilCollineation};
use crate::classify::{
    all_collinear, classify_plane_form, is_diagonal, judge_profile, PlaneKind, ProfileInput,
};
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldTower};
use crate::linalg::{self, Mat3};
use crate::projspace::{is_fq_subline, Plane, Point2};
use crate::sesqui::PlaneForm;

/// Largest number of matrices an exhaustive census may visit.
pub const EXHAUSTIVE_CAP: u128 = 100_000_000;

const CHUNK: usize = 2048;
const WAVE: usize = 64;
const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixFamily {
    /// Every non-zero matrix.
    All,
    /// det A ≠ 0.
    Invertible,
    /// Non-zero with det A = 0.
    Singular,
    /// Invertible diagonal matrices.
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Every matrix of the family, up to scalars, in lexicographic order.
    Exhaustive,
    /// `count` independent samples; sample i depends only on (seed, i).
    Random { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub m: u32,
    /// Row-major encoded entries.
    pub matrix: Vec<u32>,
    pub rank: usize,
    pub kind: String,
    pub gamma: usize,
    pub epsilon: Option<i64>,
    pub family: String,
    pub fixed_in: Option<usize>,
    pub fixed_out: Option<usize>,
    pub fixed_in_collinear: Option<bool>,
    /// |ℓ ∩ Γ| → number of lines ℓ.
    pub line_spectrum: BTreeMap<usize, usize>,
    /// Whether Steiner generation reproduced Γ (rank 2, distinct radicals).
    pub steiner: Option<bool>,
    pub violations: Vec<String>,
}

/// Per-field precomputation shared by all workers.
pub struct Kernel<'f> {
    field: &'f FieldTower,
    plane: Plane<'f>,
    // x_i σ(x_j), k = 3i + j
    monomials: Vec<[Fe; 9]>,
    // X^{σ²}
    frob2: Vec<[Fe; 3]>,
}

impl<'f> Kernel<'f> {
    pub fn new(field: &'f FieldTower) -> Self {
        let plane = Plane::new(field);
        let monomials = plane
            .points()
            .iter()
            .map(|p| {
                let x = p.coords();
                let mut out = [Fe::ZERO; 9];
                for i in 0..3 {
                    for j in 0..3 {
                        out[3 * i + j] = field.mul(x[i], field.sigma(x[j]));
                    }
                }
                out
            })
            .collect();
        let frob2 = plane
            .points()
            .iter()
            .map(|p| p.coords().map(|x| field.sigma_pow(x, 2)))
            .collect();
        Kernel {
            field,
            plane,
            monomials,
            frob2,
        }
    }

    pub fn field(&self) -> &'f FieldTower {
        self.field
    }

    pub fn plane(&self) -> &Plane<'f> {
        &self.plane
    }

    /// Membership flags of Γ, indexed like the points of the plane.
    pub fn gamma_mask(&self, a: &Mat3) -> Vec<bool> {
        let f = self.field;
        let flat = [
            a[0][0], a[0][1], a[0][2], a[1][0], a[1][1], a[1][2], a[2][0], a[2][1], a[2][2],
        ];
        self.monomials
            .iter()
            .map(|mono| {
                flat.iter()
                    .zip(mono)
                    .fold(Fe::ZERO, |acc, (&c, &x)| f.add(acc, f.mul(c, x)))
                    .is_zero()
            })
            .collect()
    }

    fn spectrum(
        &self,
        mask: &[bool],
        rank: usize,
        violations: &mut Vec<String>,
    ) -> BTreeMap<usize, usize> {
        let f = self.field;
        let q1 = f.q() as usize + 1;
        let full = f.order() as usize + 1;
        let mut hist = BTreeMap::new();
        for (li, s) in self.plane.intersection_sizes(mask).into_iter().enumerate() {
            *hist.entry(s).or_insert(0) += 1;
            if s == full {
                if rank == 3 {
                    violations.push(format!("line {li} lies in Γ but A is invertible"));
                }
            } else if ![0, 1, 2, q1].contains(&s) {
                violations.push(format!("line {li} meets Γ in {s} points"));
            } else if s == q1 && s > 3 {
                let pts: Vec<Point2> = self
                    .plane
                    .line_point_indices(li)
                    .iter()
                    .filter(|&&i| mask[i as usize])
                    .map(|&i| self.plane.points()[i as usize])
                    .collect();
                if !matches!(is_fq_subline(f, &pts), Ok(true)) {
                    violations.push(format!("line {li}: {s} points off an F_q-subline"));
                }
            }
        }
        hist
    }

    pub fn record(&self, a: &Mat3) -> CensusRecord {
        let f = self.field;
        let mask = self.gamma_mask(a);
        let gamma = mask.iter().filter(|&&b| b).count();
        let invertible = !linalg::det3(f, a).is_zero();
        let rank = if invertible {
            3
        } else {
            linalg::mat_rank(f, a)
        };
        let mut violations = Vec::new();
        let line_spectrum = self.spectrum(&mask, rank, &mut violations);
        let mut rec = CensusRecord {
            p: f.p(),
            e: f.e(),
            n: f.n(),
            m: f.m(),
            matrix: a.iter().flatten().map(|x| x.encoded()).collect(),
            rank,
            kind: String::new(),
            gamma,
            epsilon: None,
            family: String::new(),
            fixed_in: None,
            fixed_out: None,
            fixed_in_collinear: None,
            line_spectrum,
            steiner: None,
            violations,
        };
        if invertible {
            self.nondegenerate(a, &mask, &mut rec);
        } else {
            self.degenerate(a, &mut rec);
        }
        rec
    }

    fn nondegenerate(&self, a: &Mat3, mask: &[bool], rec: &mut CensusRecord) {
        let f = self.field;
        rec.kind = PlaneKind::KestenbandNondegenerate.name().to_string();
        let at_inv = linalg::inverse3(f, &linalg::transpose(a)).expect("invertible");
        let coll = linalg::mat_mul(f, &at_inv, &linalg::map_entries(a, |x| f.sigma(x)));
        let (mut fin, mut fout) = (Vec::new(), 0usize);
        for (i, p) in self.plane.points().iter().enumerate() {
            let y = linalg::mat_vec(f, &coll, &self.frob2[i]);
            if linalg::cross(f, p.coords(), &y).iter().all(|x| x.is_zero()) {
                if mask[i] {
                    fin.push(*p);
                } else {
                    fout += 1;
                }
            }
        }
        let q1 = f.q() as usize + 1;
        let input = ProfileInput {
            cardinality: rec.gamma,
            fixed_in: fin.len(),
            fixed_out: fout,
            fixed_in_collinear: (fin.len() == q1).then(|| all_collinear(f, &fin)),
            diagonal: is_diagonal(a),
        };
        rec.fixed_in = Some(input.fixed_in);
        rec.fixed_out = Some(input.fixed_out);
        rec.fixed_in_collinear = input.fixed_in_collinear;
        match judge_profile(f.q(), f.n(), input) {
            Ok(profile) => {
                rec.epsilon = profile.epsilon;
                rec.family = profile.family;
                rec.violations.extend(profile.violations);
            }
            // no cardinality theorem for this degree: nothing to judge
            Err(Error::BadDegreeParity { .. }) => {}
            Err(e) => rec.violations.push(e.to_string()),
        }
    }

    fn degenerate(&self, a: &Mat3, rec: &mut CensusRecord) {
        let f = self.field;
        let form = PlaneForm::new(f, *a);
        let class = match classify_plane_form(&form) {
            Ok(c) => c,
            Err(e) => {
                rec.kind = "unclassified".into();
                rec.violations.push(e.to_string());
                return;
            }
        };
        rec.kind = class.kind.name().to_string();
        if let Some(expected) = class.expected_cardinality(f) {
            if expected != rec.gamma {
                rec.violations.push(format!(
                    "{} predicts |Γ| = {expected}, found {}",
                    rec.kind, rec.gamma
                ));
            }
        }
        if matches!(
            class.kind,
            PlaneKind::Cf { .. } | PlaneKind::DegenerateCf { .. }
        ) {
            let ok = PencilCollineation::from_form(&form)
                .map(|phi| steiner_generate(f, &phi) == class.gamma)
                .unwrap_or(false);
            rec.steiner = Some(ok);
            if !ok {
                rec.violations
                    .push("Steiner generation differs from Γ".into());
            }
        }
    }
}

/// Aggregate over a stream of records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: u64,
    /// kind → |Γ| → count.
    pub histogram: BTreeMap<String, BTreeMap<usize, u64>>,
    pub violations: u64,
    /// Records with exactly q+1 fixed points on Γ, and those among them that are collinear.
    pub fixed_in_q_plus_one: u64,
    pub fixed_in_q_plus_one_collinear: u64,
    pub steiner_checks: u64,
    pub steiner_failures: u64,
    /// The first few offending records, re-runnable via `classify --matrix`.
    pub violation_samples: Vec<CensusRecord>,
}

const KEPT_VIOLATIONS: usize = 16;

impl Summary {
    pub fn absorb(&mut self, r: &CensusRecord) {
        self.records += 1;
        *self
            .histogram
            .entry(r.kind.clone())
            .or_default()
            .entry(r.gamma)
            .or_insert(0) += 1;
        if let Some(c) = r.fixed_in_collinear {
            self.fixed_in_q_plus_one += 1;
            self.fixed_in_q_plus_one_collinear += c as u64;
        }
        if let Some(ok) = r.steiner {
            self.steiner_checks += 1;
            self.steiner_failures += (!ok) as u64;
        }
        if !r.violations.is_empty() {
            self.violations += 1;
            if self.violation_samples.len() < KEPT_VIOLATIONS {
                self.violation_samples.push(r.clone());
            }
        }
    }

    /// |Γ| → count, over all kinds.
    pub fn gamma_histogram(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for h in self.histogram.values() {
            for (&g, &c) in h {
                *out.entry(g).or_insert(0) += c;
            }
        }
        out
    }
}

/// Matrices over F_{q^n} from row-major encoded entries.
pub fn matrix_from_encoded(field: &FieldTower, entries: &[u64]) -> Result<Mat3> {
    if entries.len() != 9 {
        return Err(Error::DimensionMismatch {
            expected: 9,
            found: entries.len(),
        });
    }
    let mut a = [[Fe::ZERO; 3]; 3];
    for (k, &v) in entries.iter().enumerate() {
        a[k / 3][k % 3] = field.elem(v)?;
    }
    Ok(a)
}

/// Σ_{i<k} Q^i, the number of points of PG(k−1, Q).
pub fn projective_count(order: u32, k: u32) -> u128 {
    (0..k).map(|i| (order as u128).pow(i)).sum()
}

/// Number of matrices an exhaustive census of `family` enumerates before filtering.
pub fn exhaustive_size(field: &FieldTower, family: MatrixFamily) -> u128 {
    match family {
        MatrixFamily::Diagonal => projective_count(field.order(), 3),
        _ => projective_count(field.order(), 9),
    }
}

fn accepts(field: &FieldTower, family: MatrixFamily, a: &Mat3) -> bool {
    match family {
        MatrixFamily::All => true,
        MatrixFamily::Invertible | MatrixFamily::Diagonal => !linalg::det3(field, a).is_zero(),
        MatrixFamily::Singular => linalg::det3(field, a).is_zero(),
    }
}

// Normalized vectors (first non-zero digit 1) in index order.
fn unrank<const N: usize>(q: u64, mut idx: u64) -> [u32; N] {
    let mut k = N - 1;
    loop {
        let block = q.pow((N - 1 - k) as u32);
        if idx < block {
            break;
        }
        idx -= block;
        k -= 1;
    }
    let mut v = [0u32; N];
    v[k] = 1;
    for i in (k + 1..N).rev() {
        v[i] = (idx % q) as u32;
        idx /= q;
    }
    v
}

fn successor<const N: usize>(q: u32, v: &mut [u32; N]) -> bool {
    let k = v.iter().position(|&x| x != 0).expect("normalized");
    for i in (k + 1..N).rev() {
        if v[i] + 1 < q {
            v[i] += 1;
            return true;
        }
        v[i] = 0;
    }
    if k == 0 {
        return false;
    }
    v[k] = 0;
    v[k - 1] = 1;
    true
}

fn diag(v: [u32; 3]) -> Mat3 {
    let mut a = [[Fe::ZERO; 3]; 3];
    for i in 0..3 {
        a[i][i] = Fe::from_raw(v[i]);
    }
    a
}

fn full(v: [u32; 9]) -> Mat3 {
    let mut a = [[Fe::ZERO; 3]; 3];
    for (k, &x) in v.iter().enumerate() {
        a[k / 3][k % 3] = Fe::from_raw(x);
    }
    a
}

/// The i-th exhaustive candidate block [start, end) of `family`, filtered.
fn exhaustive_chunk(field: &FieldTower, family: MatrixFamily, start: u64, end: u64) -> Vec<Mat3> {
    let q = field.order();
    let mut out = Vec::with_capacity((end - start) as usize);
    if family == MatrixFamily::Diagonal {
        let mut v = unrank::<3>(q as u64, start);
        for _ in start..end {
            let a = diag(v);
            if accepts(field, family, &a) {
                out.push(a);
            }
            successor(q, &mut v);
        }
    } else {
        let mut v = unrank::<9>(q as u64, start);
        for _ in start..end {
            let a = full(v);
            if accepts(field, family, &a) {
                out.push(a);
            }
            successor(q, &mut v);
        }
    }
    out
}

/// Sample i: SplitMix64 seeded with seed + i·0x9E3779B97F4A7C15; each entry is
/// ⌊w·Q / 2^64⌋ for the next output w, and samples outside the family are redrawn
/// from the same stream.
pub fn random_matrix(field: &FieldTower, family: MatrixFamily, seed: u64, i: u64) -> Mat3 {
    let q = field.order() as u128;
    let mut rng = SplitMix64::seed_from_u64(seed.wrapping_add(i.wrapping_mul(GOLDEN)));
    let mut draw = move || Fe::from_raw(((rng.next_u64() as u128 * q) >> 64) as u32);
    loop {
        let a = match family {
            MatrixFamily::All | MatrixFamily::Invertible => {
                let mut a = [[Fe::ZERO; 3]; 3];
                a.iter_mut().flatten().for_each(|x| *x = draw());
                a
            }
            MatrixFamily::Diagonal => {
                let mut a = [[Fe::ZERO; 3]; 3];
                (0..3).for_each(|k| a[k][k] = draw());
                a
            }
            MatrixFamily::Singular => {
                // rank ≤ r as a sum of r outer products, r ∈ {1, 2}
                let r = 1 + (draw().encoded() as usize % 2);
                let mut a = [[Fe::ZERO; 3]; 3];
                for _ in 0..r {
                    let u = [draw(), draw(), draw()];
                    let v = [draw(), draw(), draw()];
                    for (row, &ui) in a.iter_mut().zip(&u) {
                        for (x, &vj) in row.iter_mut().zip(&v) {
                            *x = field.add(*x, field.mul(ui, vj));
                        }
                    }
                }
                a
            }
        };
        let nonzero = a.iter().flatten().any(|x| !x.is_zero());
        if nonzero && accepts(field, family, &a) {
            return a;
        }
    }
}

/// Runs a census, handing records to `sink` in enumeration order.
pub fn run_census(
    kernel: &Kernel<'_>,
    family: MatrixFamily,
    source: Source,
    mut sink: impl FnMut(&CensusRecord) -> Result<()>,
) -> Result<Summary> {
    let field = kernel.field();
    let total = match source {
        Source::Exhaustive => {
            let size = exhaustive_size(field, family);
            if size > EXHAUSTIVE_CAP {
                return Err(Error::TooLargeForExhaustive {
                    count: size,
                    cap: EXHAUSTIVE_CAP,
                });
            }
            size as u64
        }
        Source::Random { count, .. } => count,
    };
    let chunks = total.div_ceil(CHUNK as u64);
    let mut summary = Summary::default();
    let mut wave_start = 0u64;
    while wave_start < chunks {
        let wave_end = (wave_start + WAVE as u64).min(chunks);
        let batch: Vec<Vec<CensusRecord>> = (wave_start..wave_end)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK as u64;
                let end = (start + CHUNK as u64).min(total);
                let mats = match source {
                    Source::Exhaustive => exhaustive_chunk(field, family, start, end),
                    Source::Random { seed, .. } => (start..end)
                        .map(|i| random_matrix(field, family, seed, i))
                        .collect(),
                };
                mats.iter().map(|a| kernel.record(a)).collect()
            })
            .collect();
        for rec in batch.iter().flatten() {
            summary.absorb(rec);
            sink(rec)?;
        }
        wave_start = wave_end;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::kestenband_profile;

    #[test]
    fn enumeration_order_matches_points() {
        let f = FieldTower::new(2, 1, 2, 1).unwrap();
        let q = f.order();
        let total = projective_count(q, 3) as u64;
        let mut v = unrank::<3>(q as u64, 0);
        for i in 0..total {
            let p = crate::projspace::ProjPoint::<3>::from_index(&f, i as usize);
            assert_eq!(p.coords().map(|x| x.encoded()), v);
            assert_eq!(unrank::<3>(q as u64, i), v);
            assert_eq!(successor(q, &mut v), i + 1 < total);
        }
    }

    #[test]
    fn chunks_tile_the_enumeration() {
        let f = FieldTower::new(2, 1, 2, 1).unwrap();
        let total = exhaustive_size(&f, MatrixFamily::All) as u64;
        let whole = exhaustive_chunk(&f, MatrixFamily::All, 0, total);
        assert_eq!(whole.len() as u64, total);
        let mut pieces = Vec::new();
        for s in (0..total).step_by(1000) {
            pieces.extend(exhaustive_chunk(
                &f,
                MatrixFamily::All,
                s,
                (s + 1000).min(total),
            ));
        }
        assert_eq!(pieces, whole);
        let inv = exhaustive_chunk(&f, MatrixFamily::Invertible, 0, total);
        // |GL(3,4)| / 3
        assert_eq!(inv.len(), 63 * 60 * 48 / 3);
    }

    #[test]
    fn kernel_agrees_with_library() {
        let f = FieldTower::new(2, 1, 3, 2).unwrap();
        let k = Kernel::new(&f);
        for i in 0..300 {
            let a = random_matrix(&f, MatrixFamily::Invertible, 11, i);
            let rec = k.record(&a);
            let form = PlaneForm::new(&f, a);
            assert_eq!(rec.gamma, form.absolute_points().len());
            let prof = kestenband_profile(&form).unwrap();
            assert_eq!(rec.fixed_in, Some(prof.fixed_in));
            assert_eq!(rec.fixed_out, Some(prof.fixed_out));
            assert_eq!(rec.family, prof.family);
            assert_eq!(rec.violations, prof.violations);
        }
    }

    #[test]
    fn random_samples_are_reproducible_and_in_family() {
        let f = FieldTower::new(3, 1, 2, 1).unwrap();
        for fam in [
            MatrixFamily::All,
            MatrixFamily::Invertible,
            MatrixFamily::Singular,
            MatrixFamily::Diagonal,
        ] {
            for i in 0..50 {
                let a = random_matrix(&f, fam, 5, i);
                assert_eq!(a, random_matrix(&f, fam, 5, i));
                let det = linalg::det3(&f, &a);
                match fam {
                    MatrixFamily::Invertible => assert!(!det.is_zero()),
                    MatrixFamily::Singular => assert!(det.is_zero()),
                    MatrixFamily::Diagonal => assert!(is_diagonal(&a) && !det.is_zero()),
                    MatrixFamily::All => {}
                }
            }
        }
        assert_ne!(
            random_matrix(&f, MatrixFamily::All, 5, 0),
            random_matrix(&f, MatrixFamily::All, 6, 0)
        );
    }

    #[test]
    fn census_is_ordered_and_capped() {
        let f = FieldTower::new(2, 1, 2, 1).unwrap();
        let k = Kernel::new(&f);
        let mut seen = Vec::new();
        let s = run_census(&k, MatrixFamily::Diagonal, Source::Exhaustive, |r| {
            seen.push(r.matrix.clone());
            Ok(())
        })
        .unwrap();
        assert_eq!(s.records, 9);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert_eq!(
            s.gamma_histogram().keys().copied().collect::<Vec<_>>(),
            vec![3, 9]
        );
        let big = FieldTower::new(2, 1, 4, 1).unwrap();
        let kb = Kernel::new(&big);
        assert!(matches!(
            run_census(
                &kb,
                MatrixFamily::Invertible,
                Source::Exhaustive,
                |_| Ok(())
            ),
            Err(Error::TooLargeForExhaustive { .. })
        ));
    }

    #[test]
    fn degenerate_records() {
        let f = FieldTower::new(2, 1, 3, 1).unwrap();
        let k = Kernel::new(&f);
        let (z, o) = (Fe::ZERO, Fe::ONE);
        let g = f.generator();
        let rec = k.record(&[[z, g, z], [z, f.mul(g, g), o], [z, z, z]]);
        assert_eq!(rec.kind, "degenerate-cf");
        assert_eq!(rec.gamma, 17);
        assert_eq!(rec.steiner, Some(true));
        assert!(rec.violations.is_empty());
        let rec = k.record(&[[o, z, z], [z, z, z], [z, z, z]]);
        assert_eq!(
            (rec.rank, rec.kind.as_str(), rec.gamma),
            (1, "union-two-lines", 9)
        );
        assert!(rec.violations.is_empty());
    }
}
