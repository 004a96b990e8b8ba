use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::UnitGroup;
use crate::exactalg::{BiquadElem, BiquadField, Quarters};
use crate::lattice::{adjugate, det, hermite_rows, Mat};
use crate::{par, Error, Result};

/// The simplicial cone spanned by `(ε_x^{-1}, 1, ε_y, ε_y ε_z)` for a
/// permutation `(x, y, z)` of the three generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub label: String,
    pub perm: [usize; 3],
    pub basis: [BiquadElem; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDecomposition {
    pub cones: Vec<Cone>,
    /// Per cone, the sign of the permutation times the sign of the
    /// determinant of its basis.
    pub orientation: Vec<i8>,
    /// True when all orientations agree, so the cones are disjoint up to
    /// their boundaries.
    pub disjoint: bool,
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn perm_sign(p: &[usize; 3]) -> i8 {
    let mut inv = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Integral-basis coordinates of the cone basis, one row per basis element.
fn coordinate_rows(cone: &Cone) -> Result<Mat> {
    let mut rows = Vec::with_capacity(4);
    for v in &cone.basis {
        let c = v.basis_coords();
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::InvalidInput(format!(
                "cone vector {v} is not integral"
            )));
        }
        rows.push(c.iter().map(|x| x.to_integer()).collect());
    }
    Ok(rows)
}

pub fn cone_decomposition(k: &BiquadField, units: &UnitGroup) -> Result<ConeDecomposition> {
    let (cones, orientation) = build_cones(k, &units.gens, &units.labels)?;
    if let Some(i) = orientation.iter().position(|&o| o == 0) {
        return Err(Error::DegenerateCone(cones[i].label.clone()));
    }
    let disjoint = orientation.iter().all(|&o| o == orientation[0]);
    Ok(ConeDecomposition {
        cones,
        orientation,
        disjoint,
    })
}

/// The six cones with their orientations, `0` marking a degenerate cone.
fn build_cones(
    k: &BiquadField,
    g: &[BiquadElem; 3],
    labels: &[String; 3],
) -> Result<(Vec<Cone>, Vec<i8>)> {
    let inv: Vec<BiquadElem> = g.iter().map(|x| x.inv()).collect::<Result<_>>()?;
    let mut cones = Vec::with_capacity(6);
    let mut orientation = Vec::with_capacity(6);
    for perm in PERMUTATIONS {
        let [x, y, z] = perm;
        let basis = [inv[x].clone(), k.one(), g[y].clone(), &g[y] * &g[z]];
        let label = format!("P'_{}{}{}", labels[x], labels[y], labels[z]);
        let cone = Cone { label, perm, basis };
        let d = det(&coordinate_rows(&cone)?);
        let s = if d.is_zero() {
            0
        } else if d.is_positive() {
            1
        } else {
            -1
        };
        orientation.push(perm_sign(&perm) * s);
        cones.push(cone);
    }
    Ok((cones, orientation))
}

/// How well a generator triple suits the cone cover: `2` when all six cones
/// are non-degenerate with a common orientation, `1` when they are only
/// non-degenerate, `0` otherwise.
pub(crate) fn cone_quality(k: &BiquadField, g: &[BiquadElem; 3]) -> Result<u8> {
    let labels = ["1", "2", "3"].map(String::from);
    let (_, orientation) = build_cones(k, g, &labels)?;
    Ok(if orientation.contains(&0) {
        0
    } else if orientation.iter().all(|&o| o == orientation[0]) {
        2
    } else {
        1
    })
}

/// Number of integral points in the semi-open parallelepiped of `cone`.
pub fn parallelepiped_size(cone: &Cone) -> Result<BigInt> {
    Ok(det(&coordinate_rows(cone)?).abs())
}

/// All integral points `a v1 + b v2 + c v3 + d v4` with `a, b, c, d ∈ [0, 1)`,
/// in quarter coordinates. The count equals `|det|` of the cone basis in
/// integral-basis coordinates; more than `limit` points is an error.
pub fn parallelepiped_quarters(cone: &Cone, limit: u64) -> Result<Vec<Quarters>> {
    let rows = coordinate_rows(cone)?;
    let dt = det(&rows);
    if dt.is_zero() {
        return Err(Error::DegenerateCone(cone.label.clone()));
    }
    let size = dt.abs();
    let n = size.to_u64().filter(|&n| n <= limit).ok_or_else(|| {
        Error::budget(
            format!("parallelepiped {} with {} points", cone.label, size),
            limit,
        )
    })?;
    let d = n as i128;
    // lattice of the cone basis; its Hermite diagonal gives coset representatives
    let h = hermite_rows(&rows);
    let diag: Vec<i128> = (0..4).map(|i| h[i][i].to_i128().unwrap()).collect();
    // coordinates of e in the cone basis are (e · adj(rows)) / det
    let m = crate::lattice::transpose(&rows);
    let adj = adjugate(&m);
    let sgn = if dt.is_positive() {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    };
    let adj_mod: Vec<Vec<i128>> = adj
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| (x * &sgn).mod_floor(&size).to_i128().unwrap())
                .collect()
        })
        .collect();
    let vq: Vec<Quarters> = cone
        .basis
        .iter()
        .map(Quarters::from_elem)
        .collect::<Result<_>>()?;
    let point = |t: usize| -> Result<Quarters> {
        let mut e = [0i128; 4];
        let mut rest = t as i128;
        for i in (0..4).rev() {
            e[i] = rest % diag[i];
            rest /= diag[i];
        }
        let mut acc = [0i128; 4];
        for i in 0..4 {
            let mut num = 0i128;
            for j in 0..4 {
                num = (num + adj_mod[i][j] * e[j]) % d;
            }
            for c in 0..4 {
                let term = num
                    .checked_mul(vq[i].0[c])
                    .ok_or(Error::Overflow("parallelepiped point"))?;
                acc[c] = acc[c]
                    .checked_add(term)
                    .ok_or(Error::Overflow("parallelepiped point"))?;
            }
        }
        if acc.iter().any(|x| x % d != 0) {
            return Err(Error::Mismatch(format!(
                "non-integral point in {}",
                cone.label
            )));
        }
        Ok(Quarters(acc.map(|x| x / d)))
    };
    par::map_range(n as usize, point).into_iter().collect()
}

pub fn parallelepiped_points(k: &BiquadField, cone: &Cone, limit: u64) -> Result<Vec<BiquadElem>> {
    Ok(parallelepiped_quarters(cone, limit)?
        .iter()
        .map(|q| q.to_elem(k))
        .collect())
}
