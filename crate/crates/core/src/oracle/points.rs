//! Point configurations in the projective plane.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::bareiss_rank;

/// The four standard points `[1:0:0], [0:1:0], [0:0:1], [1:1:1]`.
pub const STANDARD_POINTS: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];

/// Largest absolute value of a random affine coordinate.
const COORD_BOUND: i64 = 12;

/// `r` points in general position, with integer homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConfiguration {
    rank: u8,
    points: Vec<[i64; 3]>,
    seed: Option<u64>,
}

impl PointConfiguration {
    /// Checks general position. Errors name the violated condition.
    pub fn new(points: Vec<[i64; 3]>) -> Result<Self> {
        Self::build(points, None)
    }

    fn build(points: Vec<[i64; 3]>, seed: Option<u64>) -> Result<Self> {
        if points.len() > 7 {
            return Err(Error::RankOutOfRange(points.len()));
        }
        if let Some(reason) = violation(&points)? {
            return Err(Error::GeneralPosition(reason));
        }
        Ok(PointConfiguration {
            rank: points.len() as u8,
            points,
            seed,
        })
    }

    /// The standard points, extended by seeded random points `[x:y:1]`.
    /// Each new point is redrawn until the configuration stays general.
    pub fn standard(rank: usize, seed: u64) -> Result<Self> {
        if rank > 7 {
            return Err(Error::RankOutOfRange(rank));
        }
        let mut points: Vec<[i64; 3]> = STANDARD_POINTS.iter().copied().take(rank).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while points.len() < rank {
            let x = rng.gen_range(-COORD_BOUND..=COORD_BOUND);
            let y = rng.gen_range(-COORD_BOUND..=COORD_BOUND);
            points.push([x, y, 1]);
            if violation(&points)?.is_some() {
                points.pop();
            }
        }
        let seed = (rank > STANDARD_POINTS.len()).then_some(seed);
        Self::build(points, seed)
    }

    /// Parses `[[x,y,z], ...]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let points: Vec<[i64; 3]> =
            serde_json::from_str(text).map_err(|e| Error::MalformedPoints(e.to_string()))?;
        Self::new(points)
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn points(&self) -> &[[i64; 3]] {
        &self.points
    }

    /// The seed used for the random points, if any were drawn.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// True iff no three points are collinear and no six lie on a conic.
/// Errors on the zero vector.
pub fn check_general_position(points: &[[i64; 3]]) -> Result<bool> {
    Ok(violation(points)?.is_none())
}

fn violation(points: &[[i64; 3]]) -> Result<Option<String>> {
    if let Some(p) = points.iter().find(|p| p.iter().all(|&c| c == 0)) {
        return Err(Error::MalformedPoints(format!("{p:?} is not a projective point")));
    }
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            if cross(&points[i], &points[j]) == [0, 0, 0] {
                return Ok(Some(format!("points {} and {} coincide", i + 1, j + 1)));
            }
            for k in j + 1..n {
                if det3(&points[i], &points[j], &points[k]) == 0 {
                    return Ok(Some(format!(
                        "points {}, {}, {} are collinear",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    if n >= 6 {
        for six in subsets(n, 6) {
            let rows = six
                .iter()
                .map(|&i| {
                    let [x, y, z] = points[i];
                    [x * x, x * y, x * z, y * y, y * z, z * z]
                        .into_iter()
                        .map(BigInt::from)
                        .collect()
                })
                .collect();
            if bareiss_rank(rows) < 6 {
                let names: Vec<String> = six.iter().map(|i| (i + 1).to_string()).collect();
                return Ok(Some(format!("points {} lie on a conic", names.join(", "))));
            }
        }
    }
    Ok(None)
}

fn cross(a: &[i64; 3], b: &[i64; 3]) -> [i128; 3] {
    let [a0, a1, a2] = a.map(i128::from);
    let [b0, b1, b2] = b.map(i128::from);
    [a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0]
}

fn det3(a: &[i64; 3], b: &[i64; 3], c: &[i64; 3]) -> i128 {
    let x = cross(a, b);
    x[0] * c[0] as i128 + x[1] * c[1] as i128 + x[2] * c[2] as i128
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_four_are_general() {
        assert!(check_general_position(&STANDARD_POINTS).unwrap());
    }

    #[test]
    fn degenerate_configurations() {
        assert!(!check_general_position(&[[1, 0, 0], [2, 0, 0]]).unwrap());
        assert!(!check_general_position(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]).unwrap());
        assert!(check_general_position(&[[0, 0, 0]]).is_err());
        // six points on x*y = z^2
        let conic: Vec<[i64; 3]> = [1, 2, 3, -1, -2, -3].iter().map(|&t| [t * t, 1, t]).collect();
        assert!(!check_general_position(&conic).unwrap());
        let err = PointConfiguration::new(conic).unwrap_err();
        assert!(err.to_string().contains("conic"));
    }

    #[test]
    fn random_configurations_are_general_and_reproducible() {
        for seed in 0..5 {
            let a = PointConfiguration::standard(7, seed).unwrap();
            assert_eq!(a, PointConfiguration::standard(7, seed).unwrap());
            assert!(check_general_position(a.points()).unwrap());
            assert_eq!(&a.points()[..4], &STANDARD_POINTS);
        }
        assert_eq!(PointConfiguration::standard(4, 9).unwrap().seed(), None);
    }

    #[test]
    fn parses_json() {
        let p = PointConfiguration::from_json("[[1,0,0],[0,1,0],[0,0,1]]").unwrap();
        assert_eq!(p.rank(), 3);
        assert!(PointConfiguration::from_json("[[1,0]]").is_err());
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(7, 6).len(), 7);
        assert_eq!(subsets(5, 2).len(), 10);
    }
}
