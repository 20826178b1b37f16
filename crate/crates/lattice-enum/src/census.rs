use geom_core::{classify_quad, orient, slope_color, ColorRule, LatticePoint, QuadClass};
use rayon::prelude::*;
use thiserror::Error;

/// Hard guard on direct enumeration: C(1200, 4) ≈ 8.6×10¹⁰ cheap quadruple
/// tests is the largest run this library will attempt.
pub const MAX_ENUM_POINTS: u64 = 1200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("box dimensions must be at least 1×1, got {w}×{h}")]
    BadBox { w: i64, h: i64 },
    #[error("grid parameter must be at least 1, got {m}")]
    BadGrid { m: i64 },
    #[error(
        "{points} grid points exceed the {max}-point enumeration guard \
         ({quadruples} quadruples to test)"
    )]
    TooManyPoints { points: u64, max: u64, quadruples: u128 },
}

/// The grid `{0..w} × {0..h}` with `(w+1)(h+1)` integer points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridBox {
    w: i64,
    h: i64,
}

impl GridBox {
    pub fn new(w: i64, h: i64) -> Result<Self, LatticeError> {
        if w < 1 || h < 1 {
            return Err(LatticeError::BadBox { w, h });
        }
        Ok(Self { w, h })
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    pub fn h(&self) -> i64 {
        self.h
    }

    pub fn points(&self) -> u64 {
        (self.w as u64 + 1) * (self.h as u64 + 1)
    }
}

/// Number of 4-subsets of `n` points.
pub fn quadruples_for_points(n: u64) -> u128 {
    let n = u128::from(n);
    if n < 4 {
        0
    } else {
        n * (n - 1) * (n - 2) * (n - 3) / 24
    }
}

/// Exact census of the 4-subsets whose bounding box is exactly the given box.
///
/// `a_total` counts subsets in strictly convex position whose two crossing
/// diagonals have the same color; `a_by_corners[i]` splits `a_total` by the
/// number of subset points that are corners of the box. For the two-corner
/// class, `c2`/`d2` split the sets whose corners are the bottom-left and
/// top-right ones by whether the other two points straddle the corner
/// diagonal's supporting line (`c2`) or lie on one side (`d2`); `tlbr` counts
/// the sets with top-left/bottom-right corners, and `s2` those whose two
/// corners share a box side. `convex_total` counts all strictly convex
/// subsets regardless of color.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct BoxCounts {
    pub a_total: u128,
    pub a_by_corners: [u128; 5],
    pub c2: u128,
    pub d2: u128,
    pub s2: u128,
    pub tlbr: u128,
    pub convex_total: u128,
}

impl std::ops::Add for BoxCounts {
    type Output = BoxCounts;

    fn add(self, rhs: BoxCounts) -> BoxCounts {
        let mut a_by_corners = self.a_by_corners;
        for (into, from) in a_by_corners.iter_mut().zip(rhs.a_by_corners) {
            *into += from;
        }
        BoxCounts {
            a_total: self.a_total + rhs.a_total,
            a_by_corners,
            c2: self.c2 + rhs.c2,
            d2: self.d2 + rhs.d2,
            s2: self.s2 + rhs.s2,
            tlbr: self.tlbr + rhs.tlbr,
            convex_total: self.convex_total + rhs.convex_total,
        }
    }
}

/// Exact totals over the full `(m+1) × (m+1)` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridCounts {
    pub m: i64,
    pub total_quadruples: u128,
    pub convex: u128,
    pub mono: u128,
}

/// How [`count_grid`] computes its totals; both methods agree exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMethod {
    /// Enumerate every 4-subset of the grid.
    Direct,
    /// Sum box censuses weighted by the number of placements,
    /// `(m−w+1)·(m−h+1)` per `w × h` box.
    PerBox,
}

fn check_guard(points: u64) -> Result<usize, LatticeError> {
    if points > MAX_ENUM_POINTS {
        return Err(LatticeError::TooManyPoints {
            points,
            max: MAX_ENUM_POINTS,
            quadruples: quadruples_for_points(points),
        });
    }
    Ok(points as usize)
}

fn grid_points(cols: usize, rows: usize) -> Vec<LatticePoint> {
    let mut pts = Vec::with_capacity(cols * rows);
    for y in 0..rows {
        for x in 0..cols {
            pts.push(LatticePoint::new(x as i64, y as i64));
        }
    }
    pts
}

/// Census of all 4-subsets with bounding box exactly `bx`.
///
/// Enumeration is over sorted index quadruples in row-major order, so the
/// smallest index must lie in the bottom row and the largest in the top row;
/// the left/right sides are checked per candidate. Work is split by the
/// leading index and reduced by integer sums, so totals are independent of
/// the worker count.
pub fn count_box(bx: GridBox, rule: &ColorRule) -> Result<BoxCounts, LatticeError> {
    check_guard(bx.points())?;
    let (w, h) = (bx.w, bx.h);
    let cols = (w + 1) as usize;
    let pts = grid_points(cols, (h + 1) as usize);
    let top_start = cols * h as usize;
    Ok((0..cols)
        .into_par_iter()
        .map(|i0| {
            let mut acc = BoxCounts::default();
            scan_box_leading(&pts, i0, top_start, w, h, rule, &mut acc);
            acc
        })
        .reduce(BoxCounts::default, |a, b| a + b))
}

fn scan_box_leading(
    pts: &[LatticePoint],
    i0: usize,
    top_start: usize,
    w: i64,
    h: i64,
    rule: &ColorRule,
    acc: &mut BoxCounts,
) {
    let n = pts.len();
    let p0 = pts[i0];
    for i3 in top_start.max(i0 + 3)..n {
        let p3 = pts[i3];
        for i1 in (i0 + 1)..i3 {
            let p1 = pts[i1];
            for &p2 in &pts[(i1 + 1)..i3] {
                // Top/bottom contact is guaranteed by the index pruning;
                // left/right contact is checked here.
                let min_x = p0.x.min(p1.x).min(p2.x).min(p3.x);
                if min_x != 0 {
                    continue;
                }
                let max_x = p0.x.max(p1.x).max(p2.x).max(p3.x);
                if max_x != w {
                    continue;
                }
                tally_box_quad(&[p0, p1, p2, p3], w, h, rule, acc);
            }
        }
    }
}

fn tally_box_quad(s: &[LatticePoint; 4], w: i64, h: i64, rule: &ColorRule, acc: &mut BoxCounts) {
    let QuadClass::Convex { diagonals: [(a, b), (c, d)] } = classify_quad(s) else {
        return;
    };
    acc.convex_total += 1;
    if slope_color(s[a], s[b], rule) != slope_color(s[c], s[d], rule) {
        return;
    }
    acc.a_total += 1;
    let is_corner = |p: LatticePoint| (p.x == 0 || p.x == w) && (p.y == 0 || p.y == h);
    let n_corners = s.iter().filter(|&&p| is_corner(p)).count();
    acc.a_by_corners[n_corners] += 1;
    if n_corners != 2 {
        return;
    }
    let bl = LatticePoint::new(0, 0);
    let tr = LatticePoint::new(w, h);
    let mut others = [LatticePoint::default(); 2];
    let mut n_others = 0;
    for &p in s {
        if !is_corner(p) {
            others[n_others] = p;
            n_others += 1;
        }
    }
    let has = |q: LatticePoint| s.contains(&q);
    if has(bl) && has(tr) {
        // Straddle test on the corner diagonal's supporting line; the signs
        // are nonzero because a collinear triple would be degenerate.
        if orient(bl, tr, others[0]) * orient(bl, tr, others[1]) < 0 {
            acc.c2 += 1;
        } else {
            acc.d2 += 1;
        }
    } else if has(LatticePoint::new(w, 0)) && has(LatticePoint::new(0, h)) {
        acc.tlbr += 1;
    } else {
        acc.s2 += 1;
    }
}

/// Number of 4-subsets of the `w × h` grid that are strictly convex with
/// same-colored diagonals and **any** bounding box. Degenerate dimensions
/// (`w < 1` or `h < 1`) count on the degenerate grid: 0 whenever fewer than
/// four points exist or all points are collinear.
pub fn count_box_contained(w: i64, h: i64, rule: &ColorRule) -> Result<u128, LatticeError> {
    if w < 0 || h < 0 {
        return Ok(0);
    }
    let points = (w as u64 + 1) * (h as u64 + 1);
    if points < 4 {
        return Ok(0);
    }
    let n = check_guard(points)?;
    let cols = (w + 1) as usize;
    let pts = grid_points(cols, (h + 1) as usize);
    Ok((0..n - 3)
        .into_par_iter()
        .map(|i0| {
            let mut mono = 0u128;
            for i1 in (i0 + 1)..(n - 2) {
                for i2 in (i1 + 1)..(n - 1) {
                    for i3 in (i2 + 1)..n {
                        if geom_core::is_mono_crossing_quad(
                            &[pts[i0], pts[i1], pts[i2], pts[i3]],
                            rule,
                        ) {
                            mono += 1;
                        }
                    }
                }
            }
            mono
        })
        .sum())
}

/// `a_total` of [`count_box`] computed by inclusion–exclusion over the set of
/// untouched sides, using translation invariance of contained counts:
/// Σ_T (−1)^|T| · contained(w − #{left,right}∩T, h − #{top,bottom}∩T).
pub fn count_box_ie(bx: GridBox, rule: &ColorRule) -> Result<u128, LatticeError> {
    const BINOM2: [i128; 3] = [1, 2, 1];
    let mut acc: i128 = 0;
    for dx in 0..=2i64 {
        for dy in 0..=2i64 {
            let contained = count_box_contained(bx.w - dx, bx.h - dy, rule)? as i128;
            let sign = if (dx + dy) % 2 == 0 { 1 } else { -1 };
            acc += sign * BINOM2[dx as usize] * BINOM2[dy as usize] * contained;
        }
    }
    assert!(acc >= 0, "inclusion–exclusion produced a negative count: {acc}");
    Ok(acc as u128)
}

/// Exact totals of convex and monochromatic-crossing 4-subsets of the full
/// `(m+1) × (m+1)` grid, by direct enumeration or by the per-box sum.
pub fn count_grid(m: i64, rule: &ColorRule, method: GridMethod) -> Result<GridCounts, LatticeError> {
    if m < 1 {
        return Err(LatticeError::BadGrid { m });
    }
    let side = m as u64 + 1;
    let total_quadruples = quadruples_for_points(side * side);
    let (convex, mono) = match method {
        GridMethod::Direct => {
            let n = check_guard(side * side)?;
            let pts = grid_points(side as usize, side as usize);
            (0..n.saturating_sub(3))
                .into_par_iter()
                .map(|i0| scan_grid_leading(&pts, i0, rule))
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
        }
        GridMethod::PerBox => {
            check_guard(side * side)?;
            let mut convex = 0u128;
            let mut mono = 0u128;
            for w in 1..=m {
                for h in 1..=m {
                    let cb = count_box(GridBox::new(w, h).expect("w, h ≥ 1"), rule)?;
                    let placements = (m - w + 1) as u128 * (m - h + 1) as u128;
                    convex += placements * cb.convex_total;
                    mono += placements * cb.a_total;
                }
            }
            (convex, mono)
        }
    };
    Ok(GridCounts { m, total_quadruples, convex, mono })
}

fn scan_grid_leading(pts: &[LatticePoint], i0: usize, rule: &ColorRule) -> (u128, u128) {
    let n = pts.len();
    let mut convex = 0u128;
    let mut mono = 0u128;
    let p0 = pts[i0];
    for i1 in (i0 + 1)..(n - 2) {
        let p1 = pts[i1];
        for i2 in (i1 + 1)..(n - 1) {
            let p2 = pts[i2];
            for &p3 in &pts[(i2 + 1)..n] {
                let s = [p0, p1, p2, p3];
                if let QuadClass::Convex { diagonals: [(a, b), (c, d)] } = classify_quad(&s) {
                    convex += 1;
                    if slope_color(s[a], s[b], rule) == slope_color(s[c], s[d], rule) {
                        mono += 1;
                    }
                }
            }
        }
    }
    (convex, mono)
}
