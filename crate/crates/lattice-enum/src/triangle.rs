use num_integer::Integer;
use num_rational::Ratio;

/// Exact rational coordinate.
pub type Rational = Ratio<i64>;

/// A planar point with rational coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self { x: Rational::from_integer(x), y: Rational::from_integer(y) }
    }
}

fn checked_mul(a: i128, b: i128, what: &str) -> i128 {
    a.checked_mul(b)
        .unwrap_or_else(|| panic!("triangle count: i128 overflow while {what}"))
}

/// Orientation sign on scaled integer coordinates.
fn orient_scaled(p: (i128, i128), q: (i128, i128), r: (i128, i128)) -> i8 {
    let det = checked_mul(q.0 - p.0, r.1 - p.1, "orienting")
        .checked_sub(checked_mul(r.0 - p.0, q.1 - p.1, "orienting"))
        .unwrap_or_else(|| panic!("triangle count: i128 overflow while orienting"));
    match det.cmp(&0) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    -(-a).div_euclid(b)
}

/// Number of integer lattice points in the closed triangle (or, for collinear
/// vertices, the closed segment) spanned by three rational points.
///
/// All tests are exact: coordinates are scaled by the least common multiple
/// of their denominators and membership is decided by integer half-plane
/// signs. Coordinate ranges that would overflow the 128-bit intermediates
/// abort with a diagnostic.
pub fn count_lattice_points_triangle(
    v1: RationalPoint,
    v2: RationalPoint,
    v3: RationalPoint,
) -> u64 {
    let vs = [v1, v2, v3];
    let mut scale: i128 = 1;
    for v in &vs {
        scale = scale.lcm(&i128::from(*v.x.denom()));
        scale = scale.lcm(&i128::from(*v.y.denom()));
    }
    let sv: Vec<(i128, i128)> = vs
        .iter()
        .map(|v| {
            (
                checked_mul(i128::from(*v.x.numer()), scale / i128::from(*v.x.denom()), "scaling"),
                checked_mul(i128::from(*v.y.numer()), scale / i128::from(*v.y.denom()), "scaling"),
            )
        })
        .collect();

    let min_sx = sv.iter().map(|p| p.0).min().unwrap();
    let max_sx = sv.iter().map(|p| p.0).max().unwrap();
    let min_sy = sv.iter().map(|p| p.1).min().unwrap();
    let max_sy = sv.iter().map(|p| p.1).max().unwrap();
    let x_range = ceil_div(min_sx, scale)..=floor_div(max_sx, scale);
    let y_range = ceil_div(min_sy, scale)..=floor_div(max_sy, scale);

    let degenerate = orient_scaled(sv[0], sv[1], sv[2]) == 0;
    // For collinear vertices, membership is "on the supporting line and
    // inside the bounding box of the hull segment"; pick any two distinct
    // vertices to define the line (or fall back to a single point).
    let line = if sv[0] != sv[1] {
        (sv[0], sv[1])
    } else if sv[0] != sv[2] {
        (sv[0], sv[2])
    } else {
        (sv[0], sv[0])
    };

    let mut count = 0u64;
    for x in x_range {
        let px = checked_mul(x, scale, "scanning");
        for y in y_range.clone() {
            let p = (px, checked_mul(y, scale, "scanning"));
            let inside = if degenerate {
                let on_line = if line.0 == line.1 {
                    p == line.0
                } else {
                    orient_scaled(line.0, line.1, p) == 0
                };
                on_line
                    && (min_sx..=max_sx).contains(&p.0)
                    && (min_sy..=max_sy).contains(&p.1)
            } else {
                let s1 = orient_scaled(sv[0], sv[1], p);
                let s2 = orient_scaled(sv[1], sv[2], p);
                let s3 = orient_scaled(sv[2], sv[0], p);
                (s1 >= 0 && s2 >= 0 && s3 >= 0) || (s1 <= 0 && s2 <= 0 && s3 <= 0)
            };
            if inside {
                count += 1;
            }
        }
    }
    count
}
