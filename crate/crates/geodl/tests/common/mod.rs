//! Independent oracles for the acceptance suite: vertex enumeration over
//! closed bounded polyhedra, fixed-point grid sampling for ball containment,
//! and an exhaustive bitset refuter for pattern entailment. None of these
//! share code paths with the implementations they check.

// shared between test binaries, which each use a different subset
#![allow(dead_code)]

use geodl::geom::{HPolyhedron, LinearConstraint, RVector, Rel};
use geodl::kb::{Pattern, PatternKind};
use geodl::rat::{rat, Rat};
use num_traits::Zero;

/// Exact Gaussian elimination solving `A x = b` for a square system; `None`
/// when singular.
fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] / &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let sub = &f * &m[col][c];
                    m[r][c] = &m[r][c] - sub;
                }
            }
        }
    }
    Some((0..n).map(|r| m[r][n].clone()).collect())
}

/// All vertices of a closed H-polyhedron: intersection points of every
/// d-subset of constraint hyperplanes that satisfy all constraints.
pub fn vertices(poly: &HPolyhedron) -> Vec<RVector> {
    let d = poly.dim();
    let rows = poly.rows();
    let mut out: Vec<RVector> = Vec::new();
    let n = rows.len();
    if d == 0 || n < d {
        return out;
    }
    // enumerate d-subsets by index combinations
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let a: Vec<Vec<Rat>> = idx.iter().map(|&i| rows[i].coeffs.clone()).collect();
        let b: Vec<Rat> = idx.iter().map(|&i| rows[i].bound.clone()).collect();
        if let Some(x) = solve_square(&a, &b) {
            let p = RVector::new(x);
            if poly.member(&p).unwrap_or(false) && !out.contains(&p) {
                out.push(p);
            }
        }
        // next combination
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - d {
                idx[i] += 1;
                for j in (i + 1)..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A random closed bounded polyhedron: a bounding box plus a few random
/// non-strict rows (at most `max_rows` rows in total).
pub fn random_bounded_poly(
    rng: &mut impl rand::Rng,
    dim: usize,
    max_rows: usize,
) -> HPolyhedron {
    let mut rows = Vec::new();
    for i in 0..dim {
        let hi = rng.random_range(1..5i64);
        let lo = -rng.random_range(1..5i64);
        let mut up = vec![Rat::zero(); dim];
        up[i] = rat(1, 1);
        rows.push(LinearConstraint::new(up, Rel::Le, rat(hi, 1)));
        let mut down = vec![Rat::zero(); dim];
        down[i] = rat(-1, 1);
        rows.push(LinearConstraint::new(down, Rel::Le, rat(-lo, 1)));
    }
    while rows.len() < max_rows && rng.random_bool(0.7) {
        let coeffs: Vec<Rat> = (0..dim).map(|_| rat(rng.random_range(-3..=3), 1)).collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            continue;
        }
        rows.push(LinearConstraint::new(coeffs, Rel::Le, rat(rng.random_range(-2..=6), 1)));
    }
    HPolyhedron::new(dim, rows).expect("well-formed rows")
}

/// Fixed-point grid oracle for the two-ball lens: all quantities are
/// multiples of 1/SCALE, so membership tests are exact integer comparisons.
pub const GRID_SCALE: i64 = 128;

#[derive(Clone, Copy, Debug)]
pub struct GridBall {
    /// centre coordinates, scaled by GRID_SCALE
    pub cx: i64,
    pub cy: i64,
    /// radius, scaled by GRID_SCALE
    pub r: i64,
}

impl GridBall {
    fn contains_open(&self, x: i64, y: i64) -> bool {
        let dx = (x - self.cx) as i128;
        let dy = (y - self.cy) as i128;
        dx * dx + dy * dy < (self.r as i128) * (self.r as i128)
    }

    fn dist2(&self, x: i64, y: i64) -> i128 {
        let dx = (x - self.cx) as i128;
        let dy = (y - self.cy) as i128;
        dx * dx + dy * dy
    }
}

pub struct LensSample {
    /// max over sampled lens points of squared distance to the target centre
    pub max_dist2: Option<i128>,
    /// a sampled lens point strictly outside the open target ball
    pub violation: bool,
}

/// Samples every grid point of the lens bounding box at step 1 (scaled) and
/// reports the extreme distance to the target ball's centre.
pub fn sample_lens(a1: GridBall, a2: GridBall, b: GridBall) -> LensSample {
    let lo_x = (a1.cx - a1.r).max(a2.cx - a2.r);
    let hi_x = (a1.cx + a1.r).min(a2.cx + a2.r);
    let lo_y = (a1.cy - a1.r).max(a2.cy - a2.r);
    let hi_y = (a1.cy + a1.r).min(a2.cy + a2.r);
    let mut max_dist2 = None;
    let mut violation = false;
    let rb2 = (b.r as i128) * (b.r as i128);
    for x in lo_x..=hi_x {
        for y in lo_y..=hi_y {
            if a1.contains_open(x, y) && a2.contains_open(x, y) {
                let d2 = b.dist2(x, y);
                max_dist2 = Some(match max_dist2 {
                    Some(m) => d2.max(m),
                    None => d2,
                });
                if d2 >= rb2 {
                    violation = true;
                }
            }
        }
    }
    LensSample { max_dist2, violation }
}

/// Exhaustive pattern-entailment refuter over two roles and a three-element
/// domain: a pattern set entails a pattern iff no interpretation in this
/// space satisfies the set and violates the pattern. Adjacency is a 9-bit
/// mask per role.
pub struct PatternSpace {
    /// for each of the 2^18 interpretations, a 10-bit truth mask over
    /// [sym r, sym s, asym r, asym s, inv rs, inv sr, hier rs, hier sr,
    ///  excl rs, excl sr]
    truth: Vec<u16>,
}

pub fn two_role_patterns() -> Vec<Pattern> {
    vec![
        Pattern::new(PatternKind::Symmetry, &["r"]),
        Pattern::new(PatternKind::Symmetry, &["s"]),
        Pattern::new(PatternKind::Asymmetry, &["r"]),
        Pattern::new(PatternKind::Asymmetry, &["s"]),
        Pattern::new(PatternKind::Inversion, &["r", "s"]),
        Pattern::new(PatternKind::Inversion, &["s", "r"]),
        Pattern::new(PatternKind::Hierarchy, &["r", "s"]),
        Pattern::new(PatternKind::Hierarchy, &["s", "r"]),
        Pattern::new(PatternKind::Exclusion, &["r", "s"]),
        Pattern::new(PatternKind::Exclusion, &["s", "r"]),
    ]
}

fn transpose9(m: u16) -> u16 {
    let mut out = 0u16;
    for x in 0..3 {
        for y in 0..3 {
            if m & (1 << (x * 3 + y)) != 0 {
                out |= 1 << (y * 3 + x);
            }
        }
    }
    out
}

impl PatternSpace {
    pub fn build() -> PatternSpace {
        let mut truth = Vec::with_capacity(1 << 18);
        for code in 0u32..(1 << 18) {
            let r = (code & 0x1FF) as u16;
            let s = ((code >> 9) & 0x1FF) as u16;
            let rt = transpose9(r);
            let st = transpose9(s);
            let mut mask = 0u16;
            if r == rt {
                mask |= 1 << 0;
            }
            if s == st {
                mask |= 1 << 1;
            }
            if r & rt == 0 {
                mask |= 1 << 2;
            }
            if s & st == 0 {
                mask |= 1 << 3;
            }
            if r == st {
                mask |= 1 << 4;
            }
            if s == rt {
                mask |= 1 << 5;
            }
            if r & !s == 0 {
                mask |= 1 << 6;
            }
            if s & !r == 0 {
                mask |= 1 << 7;
            }
            if r & s == 0 {
                mask |= 1 << 8 | 1 << 9;
            }
            truth.push(mask);
        }
        PatternSpace { truth }
    }

    /// Bounded refutation: does some interpretation satisfy every pattern in
    /// `set_mask` but violate pattern `phi_idx`?
    pub fn refutes(&self, set_mask: u16, phi_idx: usize) -> bool {
        let phi = 1u16 << phi_idx;
        self.truth
            .iter()
            .any(|&t| t & set_mask == set_mask && t & phi == 0)
    }
}
