use crate::point::{quad_at_common_scale, DyadicPoint, LatticePoint};

/// Sign of the cross product `(q − p) × (r − p)`: `+1` when `p,q,r` turn
/// counterclockwise, `−1` clockwise, `0` collinear.
///
/// Exact for all inputs whose determinant fits `i128`; out-of-range inputs
/// abort with a diagnostic (a wrong sign must never be returned).
pub fn orient(p: LatticePoint, q: LatticePoint, r: LatticePoint) -> i8 {
    let ax = i128::from(q.x) - i128::from(p.x);
    let ay = i128::from(q.y) - i128::from(p.y);
    let bx = i128::from(r.x) - i128::from(p.x);
    let by = i128::from(r.y) - i128::from(p.y);
    let det = ax
        .checked_mul(by)
        .zip(bx.checked_mul(ay))
        .and_then(|(l, r)| l.checked_sub(r))
        .unwrap_or_else(|| panic!("orient: i128 overflow for {p}, {q}, {r}"));
    if det > 0 {
        1
    } else if det < 0 {
        -1
    } else {
        0
    }
}

/// True iff the open segments `ab` and `cd` share a point.
///
/// Endpoint touching and collinear overlap both return `false`: a crossing
/// must be interior to both segments.
pub fn segments_cross_properly(
    a: LatticePoint,
    b: LatticePoint,
    c: LatticePoint,
    d: LatticePoint,
) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Classification of an ordered 4-point quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadClass {
    /// Two points coincide or some three points are collinear.
    Degenerate,
    /// One point lies strictly inside the triangle of the other three.
    Concave,
    /// The four points are in strictly convex position; `diagonals` holds the
    /// unique pairing into two properly crossing segments, as index pairs
    /// into the input array (each pair sorted, pairs sorted by first index).
    Convex { diagonals: [(usize, usize); 2] },
}

impl QuadClass {
    /// The crossing diagonal pairing, if convex.
    pub fn diagonals(&self) -> Option<[(usize, usize); 2]> {
        match self {
            QuadClass::Convex { diagonals } => Some(*diagonals),
            _ => None,
        }
    }
}

/// Classifies four points as degenerate, concave, or convex with the unique
/// properly-crossing diagonal pairing.
///
/// The result is a function of the point *set*: all 24 input orders agree
/// (with diagonal pairs compared as sets of point pairs).
pub fn classify_quad(s: &[LatticePoint; 4]) -> QuadClass {
    // Orientations of the four triples; the pairing that crosses is read off
    // their signs. Segments 01 and 23 cross iff 2 and 3 lie on opposite sides
    // of line 01 (a·b < 0) and 0 and 1 lie on opposite sides of line 23
    // (c·d < 0); the other two pairings follow the same pattern after
    // substituting the shared triples.
    let a = orient(s[0], s[1], s[2]);
    let b = orient(s[0], s[1], s[3]);
    let c = orient(s[0], s[2], s[3]);
    let d = orient(s[1], s[2], s[3]);
    if a == 0 || b == 0 || c == 0 || d == 0 {
        return QuadClass::Degenerate;
    }
    let cross_01_23 = a * b < 0 && c * d < 0;
    let cross_02_13 = a * c > 0 && b * d > 0;
    let cross_03_12 = b * c < 0 && a * d < 0;
    match (cross_01_23, cross_02_13, cross_03_12) {
        (true, false, false) => QuadClass::Convex { diagonals: [(0, 1), (2, 3)] },
        (false, true, false) => QuadClass::Convex { diagonals: [(0, 2), (1, 3)] },
        (false, false, true) => QuadClass::Convex { diagonals: [(0, 3), (1, 2)] },
        (false, false, false) => QuadClass::Concave,
        _ => unreachable!("more than one crossing pairing for a nondegenerate quadruple"),
    }
}

/// [`classify_quad`] on dyadic points, reduced exactly to a common scale.
pub fn classify_quad_dyadic(s: &[DyadicPoint; 4]) -> QuadClass {
    classify_quad(&quad_at_common_scale(s))
}
