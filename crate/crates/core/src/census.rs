//! Real multiquadratic fields of degree `2^n` ordered by discriminant.
//!
//! A field is described by pairwise coprime squarefree `γ_j`, one for each
//! nonzero `j ∈ F_2^n`; the radicand attached to index `i` is
//! `A_i = ∏ γ_j` over `j` with `popcount(i & j)` odd. Relabeling the
//! generators acts on the `γ`-indices through `GL_n(F_2)`, and the
//! lexicographically smallest tuple of an orbit is the canonical one.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::contfrac::odd_partial_quotient_max;
use crate::exactalg::ntheory::{gcd_u64, is_squarefree, squarefree_sieve};
use crate::exactalg::BiquadField;
use crate::indecenum::indecomposables_with;
use crate::indecenum::Limits;
use crate::{par, Error, Result};

pub const MAX_DEGREE_EXPONENT: u32 = 4;
/// Largest `γ` product the enumerator is willing to sieve up to.
pub const MAX_SIEVE: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiquadDescriptor {
    pub n: u32,
    /// `γ_1, …, γ_{2^n-1}`.
    pub gamma: Vec<u64>,
    /// `A_1, …, A_{2^n-1}`.
    pub a: Vec<u64>,
    /// Generators `A_{2^0}, …, A_{2^{n-1}}` after normalization of their
    /// residues mod 4.
    pub generators: Vec<u64>,
    pub two_exponent: u32,
    pub discriminant: u128,
}

impl MultiquadDescriptor {
    /// The biquadratic field for `n = 2`.
    pub fn biquad(&self) -> Result<BiquadField> {
        if self.n != 2 {
            return Err(Error::InvalidInput(format!(
                "degree 2^{} field is not biquadratic",
                self.n
            )));
        }
        BiquadField::new(self.a[0], self.a[1])
    }
}

fn parity(x: usize) -> bool {
    x.count_ones() % 2 == 1
}

fn radicands(n: u32, gamma: &[u64]) -> Vec<u64> {
    let size = (1usize << n) - 1;
    (1..=size)
        .map(|i| {
            (1..=size)
                .filter(|&j| parity(i & j))
                .map(|j| gamma[j - 1])
                .product()
        })
        .collect()
}

/// 2-adic behaviour of a squarefree radicand: bit 0 set when the odd part is
/// 3 mod 4, bit 1 set when the radicand is even.
fn two_class(a: u64) -> u8 {
    let even = a.is_multiple_of(2);
    let odd = if even { a / 2 } else { a };
    (odd % 4 == 3) as u8 | ((even as u8) << 1)
}

fn rank_f2(vectors: impl IntoIterator<Item = usize>) -> usize {
    let mut basis: Vec<usize> = Vec::new();
    for v in vectors {
        let mut x = v;
        for b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
        }
    }
    basis.len()
}

fn quad_disc(a: u64) -> u128 {
    if a % 4 == 1 {
        a as u128
    } else {
        4 * a as u128
    }
}

/// Normalized generators and the exponent `r`.
fn normalize(n: u32, a: &[u64]) -> (Vec<u64>, u32) {
    // indices sorted by radicand so the chosen generators are small
    let mut order: Vec<usize> = (1..=a.len()).collect();
    order.sort_by_key(|&i| (a[i - 1], i));
    let mut kernel: Vec<usize> = Vec::new();
    let mut reduced: Vec<usize> = Vec::new();
    for &i in &order {
        if two_class(a[i - 1]) != 0 {
            continue;
        }
        let mut x = i;
        for b in &reduced {
            x = x.min(x ^ b);
        }
        if x != 0 {
            reduced.push(x);
            kernel.push(i);
        }
    }
    let mut gens: Vec<u64> = kernel.iter().map(|&i| a[i - 1]).collect();
    let first = |pred: &dyn Fn(u8) -> bool| {
        order
            .iter()
            .map(|&i| a[i - 1])
            .find(|&x| pred(two_class(x)))
    };
    let image = rank_f2(a.iter().map(|&x| two_class(x) as usize));
    let r = match image {
        0 => 0,
        1 => {
            gens.push(first(&|c| c != 0).expect("nonzero class"));
            2
        }
        _ => {
            gens.push(first(&|c| c & 2 != 0).expect("even radicand"));
            gens.push(first(&|c| c == 1).expect("radicand 3 mod 4"));
            3
        }
    };
    debug_assert_eq!(gens.len(), n as usize);
    (gens, r)
}

pub fn gamma_to_field(n: u32, gamma: &[u64]) -> Result<MultiquadDescriptor> {
    if n == 0 || n > MAX_DEGREE_EXPONENT {
        return Err(Error::InvalidInput(format!(
            "degree exponent {n} outside 1..={MAX_DEGREE_EXPONENT}"
        )));
    }
    let size = (1usize << n) - 1;
    if gamma.len() != size {
        return Err(Error::InvalidInput(format!(
            "expected {size} gamma entries, got {}",
            gamma.len()
        )));
    }
    for (j, &g) in gamma.iter().enumerate() {
        if g == 0 || !is_squarefree(g) {
            return Err(Error::NotSquarefree(g));
        }
        for &h in &gamma[..j] {
            if gcd_u64(g, h) != 1 {
                return Err(Error::InvalidInput(format!(
                    "gamma entries {h} and {g} are not coprime"
                )));
            }
        }
    }
    if rank_f2((1..=size).filter(|&j| gamma[j - 1] > 1)) != n as usize {
        return Err(Error::InvalidInput(format!(
            "gamma tuple does not give a field of degree 2^{n}"
        )));
    }
    let a = radicands(n, gamma);
    let (generators, r) = normalize(n, &a);
    let prod = a
        .iter()
        .try_fold(1u128, |acc, &x| acc.checked_mul(x as u128))
        .ok_or(Error::Overflow("discriminant"))?;
    let discriminant = prod
        .checked_mul(1u128 << ((1u32 << (n - 1)) * r))
        .ok_or(Error::Overflow("discriminant"))?;
    let conductors = a.iter().map(|&x| quad_disc(x)).product::<u128>();
    if conductors != discriminant {
        return Err(Error::Mismatch(format!(
            "discriminant {discriminant} differs from conductor product {conductors}"
        )));
    }
    Ok(MultiquadDescriptor {
        n,
        gamma: gamma.to_vec(),
        a,
        generators,
        two_exponent: r,
        discriminant,
    })
}

/// Index permutations `j -> h(j)` for every `h ∈ GL_n(F_2)`.
fn relabelings(n: u32) -> Vec<Vec<usize>> {
    let size = (1usize << n) - 1;
    let mut out = Vec::new();
    let mut cols = vec![0usize; n as usize];
    fn rec(k: usize, n: usize, size: usize, cols: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == n {
            let perm = (1..=size)
                .map(|j| {
                    (0..n)
                        .filter(|b| j >> b & 1 == 1)
                        .fold(0, |acc, b| acc ^ cols[b])
                })
                .collect();
            out.push(perm);
            return;
        }
        for c in 1..=size {
            cols[k] = c;
            if rank_f2(cols[..=k].iter().copied()) == k + 1 {
                rec(k + 1, n, size, cols, out);
            }
        }
    }
    rec(0, n as usize, size, &mut cols, &mut out);
    out
}

fn is_orbit_minimal(gamma: &[u64], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|h| {
        for (j, &g) in gamma.iter().enumerate() {
            let other = gamma[h[j] - 1];
            if other != g {
                return other > g;
            }
        }
        true
    })
}

/// Lower bound for `γ_j` implied by orbit minimality: an index outside the
/// span of `1, 2, …, 2^k` can be moved onto `2^k` while fixing the smaller
/// powers of two.
fn floor_for(j: usize, gamma: &[u64]) -> u64 {
    let mut lo = 1;
    let mut b = 1;
    while b < j {
        lo = lo.max(gamma[b - 1]);
        b <<= 1;
    }
    lo
}

struct Enumerator<'a> {
    n: u32,
    size: usize,
    y: u64,
    sieve: &'a [bool],
    perms: &'a [Vec<usize>],
}

impl Enumerator<'_> {
    fn dfs(
        &self,
        gamma: &mut Vec<u64>,
        prod: u64,
        out: &mut Vec<MultiquadDescriptor>,
    ) -> Result<()> {
        let j = gamma.len() + 1;
        if j > self.size {
            if rank_f2((1..=self.size).filter(|&i| gamma[i - 1] > 1)) != self.n as usize {
                return Ok(());
            }
            if !is_orbit_minimal(gamma, self.perms) {
                return Ok(());
            }
            let d = gamma_to_field(self.n, gamma)?;
            if (prod as u128) << d.two_exponent <= self.y as u128 {
                out.push(d);
            }
            return Ok(());
        }
        let lo = floor_for(j, gamma);
        let hi = self.y / prod;
        for v in lo..=hi {
            if !self.sieve[v as usize] || gcd_u64(v, prod) != 1 {
                continue;
            }
            gamma.push(v);
            self.dfs(gamma, prod * v, out)?;
            gamma.pop();
        }
        Ok(())
    }
}

/// All real fields of degree `2^n` with discriminant at most `x`, each once,
/// in the order of their canonical `γ` tuples.
pub fn enumerate_fields(n: u32, x: u128) -> Result<Vec<MultiquadDescriptor>> {
    if n == 0 || n > MAX_DEGREE_EXPONENT {
        return Err(Error::InvalidInput(format!(
            "degree exponent {n} outside 1..={MAX_DEGREE_EXPONENT}"
        )));
    }
    // Δ = (2^r ∏γ)^{2^{n-1}}
    let y = iroot_u128(x, 1 << (n - 1));
    if y > MAX_SIEVE as u128 {
        return Err(Error::budget("census sieve", MAX_SIEVE));
    }
    let y = y as u64;
    if y < 2 {
        return Ok(Vec::new());
    }
    let sieve = squarefree_sieve(y as usize);
    let perms = relabelings(n);
    let e = Enumerator {
        n,
        size: (1 << n) - 1,
        y,
        sieve: &sieve,
        perms: &perms,
    };
    let firsts: Vec<u64> = (1..=y).filter(|&v| sieve[v as usize]).collect();
    let chunks = par::try_map(&firsts, |&g1| {
        let mut out = Vec::new();
        let mut gamma = vec![g1];
        e.dfs(&mut gamma, g1, &mut out)?;
        Ok::<_, Error>(out)
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

fn iroot_u128(x: u128, k: u32) -> u128 {
    let mut lo = 0u128;
    let mut hi = 1u128 << (128 / k + 1).min(127);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        let fits = (0..k)
            .try_fold(1u128, |acc, _| acc.checked_mul(mid))
            .is_some_and(|p| p <= x);
        if fits {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bucket {
    /// Inclusive lower and exclusive upper discriminant.
    pub lo: u128,
    pub hi: u128,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IotaStats {
    pub r: usize,
    pub at_most_r: u64,
    pub histogram: BTreeMap<usize, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusStats {
    pub n: u32,
    pub max_disc: u128,
    pub total: u64,
    pub buckets: Vec<Bucket>,
    pub b: u64,
    /// Fields all of whose quadratic subfields have odd partial quotients at most `b`.
    pub within_b: u64,
    pub exceeding_b: u64,
    pub iota: Option<IotaStats>,
}

pub fn census_stats(
    n: u32,
    x: u128,
    b: u64,
    r: Option<usize>,
    limits: &Limits,
) -> Result<CensusStats> {
    let fields = enumerate_fields(n, x)?;
    let mut buckets = Vec::new();
    let mut lo = 1u128;
    while lo <= x {
        let hi = lo.saturating_mul(10);
        let count = fields
            .iter()
            .filter(|f| f.discriminant >= lo && f.discriminant < hi)
            .count() as u64;
        buckets.push(Bucket { lo, hi, count });
        lo = hi;
    }
    let radicands: Vec<u64> = fields
        .iter()
        .flat_map(|f| f.a.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let maxima = par::try_map(&radicands, |&d| odd_partial_quotient_max(d))?;
    let table: HashMap<u64, u64> = radicands.into_iter().zip(maxima).collect();
    let within_b = fields
        .iter()
        .filter(|f| f.a.iter().all(|d| table[d] <= b))
        .count() as u64;
    let iota = match r {
        None => None,
        Some(r) => {
            if n != 2 {
                return Err(Error::InvalidInput("iota statistics need n = 2".into()));
            }
            let iotas = par::try_map(&fields, |f| {
                Ok::<_, Error>(indecomposables_with(&f.biquad()?, limits)?.iota)
            })?;
            let mut histogram = BTreeMap::new();
            for &i in &iotas {
                *histogram.entry(i).or_insert(0) += 1;
            }
            let at_most_r = iotas.iter().filter(|&&i| i <= r).count() as u64;
            Some(IotaStats {
                r,
                at_most_r,
                histogram,
            })
        }
    };
    let total = fields.len() as u64;
    Ok(CensusStats {
        n,
        max_disc: x,
        total,
        buckets,
        b,
        within_b,
        exceeding_b: total - within_b,
        iota,
    })
}

/// `X^{2^{1-n}} (log X)^{2^n - 2}`, the growth rate of the field count.
/// Only used for reporting.
pub fn growth_rate(n: u32, x: u128) -> f64 {
    let xf = x as f64;
    xf.powf(2f64.powi(1 - n as i32)) * xf.ln().powi((1 << n) - 2)
}
