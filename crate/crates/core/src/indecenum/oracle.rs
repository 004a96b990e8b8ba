//! Independent enumeration of indecomposables by scanning a fundamental
//! parallelotope of the unit action.
//!
//! For totally positive `α` of norm `N`, the log-embedding of `α / N^{1/4}`
//! lies in the trace-zero hyperplane, spanned by the log-embeddings of the
//! unit generators `g_1, g_2, g_3`. Multiplying by units moves its
//! coordinates `c ∈ R³` into `[0, 1)³`, where
//! `σ_i(α) = N^{1/4} ∏_j σ_i(g_j)^{c_j}`. The unit cube is cut into `m³`
//! cells; on each cell those products are bounded by rational numbers, and
//! with `1 <= N <= Δ_K` (every indecomposable has norm at most the
//! discriminant) each cell yields a box in Minkowski space. All integral
//! points of all boxes are tested. No cones, parallelepipeds or continued
//! fractions are involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::search::{Bounds, Searcher};
use super::{elem_order, orbit_classes, reduce_by_units};
use crate::biquadstruct::UnitGroup;
use crate::exactalg::ntheory::{iroot_ceil, iroot_floor};
use crate::exactalg::{BiquadElem, BiquadField, Quarters, FIX_BITS};
use crate::{par, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub reps: Vec<BiquadElem>,
    pub iota: usize,
    pub subdivisions: u32,
    pub scanned: u64,
    pub norm_bound: u64,
    pub max_norm: u64,
}

/// `λ^{k/m}` at scale `2^F` for `λ = l / 2^F`, rounded down or up.
fn frac_pow(l: &BigInt, k: u32, m: u32, up: bool) -> BigInt {
    let f = FIX_BITS as usize;
    let x = num_traits::pow(l.clone(), k as usize) << (f * (m - k) as usize);
    if up {
        iroot_ceil(&x, m)
    } else {
        iroot_floor(&x, m)
    }
}

struct CellTables {
    m: u32,
    /// `low[i][j][c]`, `high[i][j][c]`: bounds of `σ_i(g_j)^t` over
    /// `t ∈ [c/m, (c+1)/m]`, scale `2^F`.
    low: Vec<Vec<Vec<BigInt>>>,
    high: Vec<Vec<Vec<BigInt>>>,
    root_n: BigInt,
}

impl CellTables {
    fn new(lam: &[[(BigInt, BigInt); 3]; 4], m: u32, root_n: &BigInt) -> CellTables {
        let mut low = vec![vec![Vec::new(); 3]; 4];
        let mut high = vec![vec![Vec::new(); 3]; 4];
        for i in 0..4 {
            for j in 0..3 {
                let (l_lo, l_hi) = &lam[i][j];
                let lo_p: Vec<BigInt> = (0..=m).map(|k| frac_pow(l_lo, k, m, false)).collect();
                let hi_p: Vec<BigInt> = (0..=m).map(|k| frac_pow(l_hi, k, m, true)).collect();
                for c in 0..m as usize {
                    low[i][j].push(lo_p[c].clone().min(lo_p[c + 1].clone()));
                    high[i][j].push(hi_p[c].clone().max(hi_p[c + 1].clone()));
                }
            }
        }
        CellTables {
            m,
            low,
            high,
            root_n: root_n.clone(),
        }
    }

    fn cells(&self) -> Vec<[usize; 3]> {
        let m = self.m as usize;
        let mut out = Vec::with_capacity(m * m * m);
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    /// Box on `S_i = 4σ_i` at scale `2^F`.
    fn bounds(&self, cell: &[usize; 3]) -> Result<Bounds> {
        let f = FIX_BITS as usize;
        let mut lo = [0i128; 4];
        let mut hi = [0i128; 4];
        for i in 0..4 {
            let mut l = BigInt::one();
            let mut h = self.root_n.clone();
            for j in 0..3 {
                l *= &self.low[i][j][cell[j]];
                h *= &self.high[i][j][cell[j]];
            }
            let l: BigInt = (l >> (2 * f)) * 4;
            let h: BigInt = -((-h) >> (3 * f)) * 4;
            lo[i] = l.to_i128().ok_or(Error::Overflow("cell bounds"))?;
            hi[i] = h.to_i128().ok_or(Error::Overflow("cell bounds"))?;
        }
        Ok(Bounds { lo, hi })
    }

    /// Rough lattice point count of all boxes, used to pick `m`.
    fn estimate(&self, disc: u64) -> BigInt {
        let f = FIX_BITS as usize;
        let mut total = BigInt::from(0);
        for cell in self.cells() {
            if let Ok(b) = self.bounds(&cell) {
                let mut v = BigInt::one();
                for i in 0..4 {
                    v *= BigInt::from((b.hi[i] - b.lo[i]).max(0));
                }
                total += v;
            }
        }
        let covol =
            BigInt::from(256u32) * num_integer::Roots::sqrt(&BigInt::from(disc)).max(BigInt::one());
        total / (covol << (4 * f))
    }
}

/// Norm of an integral element from quarter coordinates.
fn quarter_norm(s: &Searcher, q: &Quarters) -> Result<BigInt> {
    // β·σ_1(β) has only X and Z parts: (X + Z√q)/4
    let t = s.engine.mul(q, &s.engine.conj(1, q))?;
    let (x, z) = (BigInt::from(t.0[0]), BigInt::from(t.0[2]));
    let n = &x * &x - BigInt::from(s.field.q) * &z * &z;
    debug_assert!(n.is_multiple_of(&BigInt::from(16)));
    Ok(n / 16)
}

pub fn oracle_indecomposables(
    k: &BiquadField,
    units: &UnitGroup,
    subdivisions: Option<u32>,
    budget: u64,
) -> Result<OracleResult> {
    let searcher = Searcher::new(*k);
    let disc = k.discriminant();
    let f = FIX_BITS as usize;
    // enclosures of σ_i(g_j) at scale 2^F
    let mut lam: [[(BigInt, BigInt); 3]; 4] = Default::default();
    for j in 0..3 {
        let g = Quarters::from_elem(&units.gens[j])?;
        for (i, row) in lam.iter_mut().enumerate() {
            let iv = searcher
                .engine
                .embed_iv(i, &g)
                .ok_or(Error::Overflow("unit enclosure"))?;
            let lo = BigInt::from(iv.lo.div_euclid(4)).max(BigInt::one());
            let hi = BigInt::from(-((-iv.hi).div_euclid(4)));
            row[j] = (lo, hi);
        }
    }
    let root_n = iroot_ceil(&(BigInt::from(disc) << (4 * f)), 4);
    let tables = match subdivisions {
        Some(m) => CellTables::new(&lam, m.max(1), &root_n),
        None => {
            let mut best: Option<(BigInt, CellTables)> = None;
            for m in 1..=16u32 {
                let t = CellTables::new(&lam, m, &root_n);
                let cost = t.estimate(disc) + BigInt::from(400u64 * (m as u64).pow(3));
                if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                    best = Some((cost, t));
                }
            }
            best.unwrap().1
        }
    };
    let cells = tables.cells();
    let per_cell = par::try_map(&cells, |cell| {
        let b = tables.bounds(cell)?;
        let mut hits: Vec<(Quarters, u64)> = Vec::new();
        let mut seen = 0u64;
        let mut candidates = Vec::new();
        searcher.scan(&b, None, budget, |q| {
            seen += 1;
            if searcher.engine.is_totally_positive(&q) {
                candidates.push(q);
            }
            Ok(true)
        })?;
        for q in candidates {
            let n = quarter_norm(&searcher, &q)?;
            if n.is_positive()
                && n <= BigInt::from(disc)
                && searcher.summands(&q, true, budget)?.is_empty()
            {
                hits.push((q, n.to_u64().unwrap()));
            }
        }
        Ok::<_, Error>((hits, seen))
    })?;
    let mut all: Vec<(Quarters, u64)> = Vec::new();
    let mut scanned = 0u64;
    for (h, s) in per_cell {
        all.extend(h);
        scanned += s;
    }
    if scanned > budget {
        return Err(Error::budget("parallelotope scan", budget));
    }
    all.sort();
    all.dedup();
    let max_norm = all.iter().map(|x| x.1).max().unwrap_or(0);
    let items: Vec<(BiquadElem, String)> = all
        .iter()
        .map(|(q, _)| (q.to_elem(k), String::new()))
        .collect();
    let classes = orbit_classes(items)?;
    let mut reps: Vec<BiquadElem> =
        par::try_map(&classes, |(e, _)| reduce_by_units(e, &units.gens))?;
    reps.sort_by(elem_order);
    Ok(OracleResult {
        iota: reps.len(),
        reps,
        subdivisions: tables.m,
        scanned,
        norm_bound: disc,
        max_norm,
    })
}
