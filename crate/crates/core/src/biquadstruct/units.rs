use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cone::cone_quality;
use crate::contfrac::cf_expand;
use crate::exactalg::ntheory::{factor, squarefree_part_with_hint, squarefree_product};
use crate::exactalg::{
    clear_denominators, BiquadElem, BiquadField, QuadElem, Rat, EMBEDDING_SIGNS,
};
use crate::{Error, Result};

/// Kubota data of a totally positive unit `ε` of norm 1: `δ·ε` is a square,
/// with `√(δε) = (ε+1)/m` and `Tr(ε+1) = δm²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kubota {
    pub delta: u64,
    pub m: BigInt,
    pub root: QuadElem,
}

pub fn kubota_delta(eps: &QuadElem) -> Result<Kubota> {
    if !eps.is_integral() || !eps.is_totally_positive() || !eps.norm().is_one() {
        return Err(Error::InvalidInput(format!(
            "{eps} is not a totally positive unit"
        )));
    }
    let f = eps.field;
    let one = f.one();
    let e1 = eps + &one;
    let t = e1.trace().to_integer();
    let (delta, m) = match squarefree_part_with_hint(&t, 2 * f.d) {
        Some(x) => x,
        None => {
            let tv = t.to_u64().ok_or(Error::Overflow("Kubota trace"))?;
            let delta: u64 = factor(tv)
                .into_iter()
                .filter(|&(_, e)| e % 2 == 1)
                .map(|(p, _)| p)
                .product();
            (delta, num_integer::Roots::sqrt(&BigInt::from(tv / delta)))
        }
    };
    let root = e1.scale(&Rat::new(BigInt::one(), m.clone()));
    let check = &root * &root;
    let target = eps.scale(&Rat::from_integer(BigInt::from(delta)));
    if check != target {
        return Err(Error::Mismatch(format!(
            "Kubota root of {eps} does not square to δε"
        )));
    }
    Ok(Kubota { delta, m, root })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubfieldUnit {
    pub d: u64,
    /// Fundamental unit `> 1`.
    pub fundamental: QuadElem,
    pub norm: i64,
    /// `ε` or `ε²`, whichever is totally positive.
    pub totally_positive: QuadElem,
    pub kubota: Kubota,
}

pub fn subfield_units(k: &BiquadField) -> Result<[SubfieldUnit; 3]> {
    let mut out = Vec::with_capacity(3);
    for d in k.radicands() {
        let cf = cf_expand(d)?;
        let fundamental = cf.fundamental_unit();
        let norm = if cf.s() % 2 == 0 { 1 } else { -1 };
        let totally_positive = cf.totally_positive_unit();
        let kubota = kubota_delta(&totally_positive)?;
        out.push(SubfieldUnit {
            d,
            fundamental,
            norm,
            totally_positive,
            kubota,
        });
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

fn sqrt_of_radicand(k: &BiquadField, s: u64) -> Option<BiquadElem> {
    match s {
        1 => Some(k.one()),
        _ => {
            let idx = k.subfield_index(s)?;
            let mut c = [0i64; 4];
            c[idx + 1] = 1;
            Some(k.int_elem(c))
        }
    }
}

/// Decides whether `∏ ε_j^{i_j}` is a square in `K`, for the totally positive
/// subfield units `ε_j`, by the squarefree part of `∏ δ_j^{i_j}`. When it is,
/// returns the square root `∏((ε_j+1)/m_j)^{i_j} / (k√s)`, verified by squaring.
pub fn unit_square_test(
    k: &BiquadField,
    units: &[SubfieldUnit; 3],
    exps: [u8; 3],
) -> Result<Option<BiquadElem>> {
    let mut s = 1u64;
    let mut prod = BigInt::one();
    let mut root = k.one();
    let mut target = k.one();
    for j in 0..3 {
        if exps[j] == 1 {
            let kb = &units[j].kubota;
            s = squarefree_product(s, kb.delta);
            prod *= BigInt::from(kb.delta);
            root = &root * &k.embed_quad(&kb.root)?;
            target = &target * &k.embed_quad(&units[j].totally_positive)?;
        }
    }
    let Some(sqrt_s) = sqrt_of_radicand(k, s) else {
        return Ok(None);
    };
    let kk = num_integer::Roots::sqrt(&(&prod / BigInt::from(s)));
    let denom = sqrt_s.scale(&Rat::from_integer(kk));
    let root = &root * &denom.inv()?;
    if &root * &root != target {
        return Err(Error::Mismatch("Kubota square root does not verify".into()));
    }
    Ok(Some(root))
}

/// Fixed-point enclosure of `2^bits · σ_k(x)` for `x` with numerators `v`
/// over the positive denominator `den`.
fn embedding_enclosure(
    k: &BiquadField,
    v: &[BigInt],
    den: &BigInt,
    emb: usize,
    bits: u32,
) -> (BigInt, BigInt) {
    let s = EMBEDDING_SIGNS[emb];
    let rad = k.radicands();
    let mut lo = &v[0] << bits;
    let mut hi = lo.clone();
    for i in 0..3 {
        let c = &v[i + 1] * BigInt::from(s[i]);
        if c.is_zero() {
            continue;
        }
        let r_lo = num_integer::Roots::sqrt(&(BigInt::from(rad[i]) << (2 * bits)));
        let r_hi = &r_lo + 1;
        if c.is_positive() {
            lo += &c * &r_lo;
            hi += &c * &r_hi;
        } else {
            lo += &c * &r_hi;
            hi += &c * &r_lo;
        }
    }
    (
        num_integer::Integer::div_floor(&lo, den),
        -num_integer::Integer::div_floor(&(-hi), den),
    )
}

/// Integral square root of `x` in `K`, if one exists. Candidates are located
/// from certified enclosures of the embeddings of `√x` and verified exactly.
pub fn exact_sqrt(x: &BiquadElem) -> Option<BiquadElem> {
    if x.is_zero() {
        return Some(x.clone());
    }
    if !x.is_totally_positive() {
        return None;
    }
    let k = x.field;
    let (v, den) = clear_denominators(&x.c);
    let rad = k.radicands();
    let mut bits = 64u32;
    'precision: while bits <= 8192 {
        // enclosures of √σ_k(x), scaled by 2^bits
        let mut roots = Vec::with_capacity(4);
        for emb in 0..4 {
            let (lo, hi) = embedding_enclosure(&k, &v, &den, emb, 2 * bits);
            let lo = if lo.is_negative() { BigInt::zero() } else { lo };
            let r_lo = num_integer::Roots::sqrt(&lo);
            let r_hi = num_integer::Roots::sqrt(&hi) + 1;
            roots.push((r_lo, r_hi));
        }
        let sq: Vec<(BigInt, BigInt)> = rad
            .iter()
            .map(|&d| {
                let lo = num_integer::Roots::sqrt(&(BigInt::from(d) << (2 * bits)));
                let hi = &lo + 1;
                (lo, hi)
            })
            .collect();
        let one = BigInt::one() << bits;
        let mut ambiguous = false;
        for pattern in 0..8u32 {
            let signs: [i64; 4] = [
                1,
                if pattern & 1 == 0 { 1 } else { -1 },
                if pattern & 2 == 0 { 1 } else { -1 },
                if pattern & 4 == 0 { 1 } else { -1 },
            ];
            // Y_0 = Σ τ_k and Y_i √d_i = Σ e_ki τ_k, all over 2^bits
            let mut coords: Vec<(BigInt, BigInt)> = Vec::with_capacity(4);
            for i in 0..4 {
                let mut lo = BigInt::zero();
                let mut hi = BigInt::zero();
                for emb in 0..4 {
                    let e = if i == 0 {
                        1
                    } else {
                        EMBEDDING_SIGNS[emb][i - 1] as i64
                    };
                    let sgn = e * signs[emb];
                    let (a, b) = &roots[emb];
                    if sgn > 0 {
                        lo += a;
                        hi += b;
                    } else {
                        lo -= b;
                        hi -= a;
                    }
                }
                if i > 0 {
                    // divide by √d_i; numerators scaled by 2^bits so the
                    // quotient keeps scale 2^bits after multiplying by `one`
                    let (s_lo, s_hi) = &sq[i - 1];
                    let div_lo = |n: &BigInt| {
                        let d = if n.is_negative() { s_lo } else { s_hi };
                        num_integer::Integer::div_floor(&(n * &one), d)
                    };
                    let div_hi = |n: &BigInt| {
                        let d = if n.is_negative() { s_hi } else { s_lo };
                        -num_integer::Integer::div_floor(&(-(n * &one)), d)
                    };
                    let (a, b) = (div_lo(&lo), div_hi(&hi));
                    lo = a;
                    hi = b;
                }
                coords.push((lo, hi));
            }
            let mut cand = [
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero(),
            ];
            let mut empty = false;
            for (i, (lo, hi)) in coords.iter().enumerate() {
                let first = -num_integer::Integer::div_floor(&(-lo), &one);
                let last = num_integer::Integer::div_floor(hi, &one);
                if first > last {
                    empty = true;
                    break;
                }
                if first != last {
                    ambiguous = true;
                    empty = true;
                    break;
                }
                cand[i] = first;
            }
            if empty {
                continue;
            }
            let y = k.from_quarters(&cand);
            if &y * &y == *x {
                return Some(y);
            }
        }
        if !ambiguous {
            return None;
        }
        bits *= 2;
        continue 'precision;
    }
    None
}

/// Totally positive units of `K` modulo torsion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroup {
    pub field: BiquadField,
    pub subfield: [SubfieldUnit; 3],
    /// Generators of the totally positive units, each `> 1` at the identity.
    pub gens: [BiquadElem; 3],
    /// Doubled exponents of each generator over `(ε_p, ε_q, ε_r)`:
    /// `g² = ± ε_p^a ε_q^b ε_r^c` stored as `[a, b, c]`.
    pub gen_exponents: [[i64; 3]; 3],
    pub labels: [String; 3],
    /// `[O_K^× : O_K^{×,+}]`.
    pub index_total_pos: u32,
    /// `[O_K^{×,+} : (O_K^×)²]`.
    pub index_squares: u32,
    /// Exponent patterns `c ∈ {0,1}³` for which `±ε^c` is a square.
    pub square_classes: Vec<[u8; 3]>,
    /// True if the totally positive units are not generated by the
    /// totally positive units of the three quadratic subfields.
    pub extra_units: bool,
}

fn sign_bits(x: &BiquadElem) -> u8 {
    let s = x.signs();
    let mut b = 0u8;
    for (i, v) in s.iter().enumerate() {
        if *v < 0 {
            b |= 1 << i;
        }
    }
    b
}

fn f2_rank(vs: &[u8]) -> u32 {
    let mut basis: Vec<u8> = Vec::new();
    for &v in vs {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len() as u32
}

/// Reduced echelon basis of a subspace of `F_2^3` given by all its
/// elements, as (vector, pivot) with the pivot the lowest set coordinate.
fn f2_echelon(space: &[[u8; 3]]) -> Vec<([u8; 3], usize)> {
    let mut rows: Vec<[u8; 3]> = Vec::new();
    for v in space {
        let mut x = *v;
        for r in &rows {
            let piv = r.iter().position(|&c| c == 1).unwrap();
            if x[piv] == 1 {
                for i in 0..3 {
                    x[i] ^= r[i];
                }
            }
        }
        if x.contains(&1) {
            let piv = x.iter().position(|&c| c == 1).unwrap();
            for r in rows.iter_mut() {
                if r[piv] == 1 {
                    for i in 0..3 {
                        r[i] ^= x[i];
                    }
                }
            }
            rows.push(x);
        }
    }
    let mut out: Vec<([u8; 3], usize)> = rows
        .into_iter()
        .map(|r| (r, r.iter().position(|&c| c == 1).unwrap()))
        .collect();
    out.sort_by_key(|x| x.1);
    out
}

/// Size of a unit: `Tr(u) + Tr(u^{-1})`, minimal exactly at roots of unity.
fn unit_size(u: &BiquadElem) -> Result<Rat> {
    Ok(u.trace() + u.inv()?.trace())
}

/// Greedy pairwise reduction of a unit basis: replace `g_i` by
/// `g_i g_j^{±1}` while that lowers its size.
fn reduce_basis(gens: &mut [(BiquadElem, [i64; 3])]) -> Result<()> {
    let mut sizes: Vec<Rat> = gens
        .iter()
        .map(|g| unit_size(&g.0))
        .collect::<Result<_>>()?;
    loop {
        let mut improved = false;
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                if i == j {
                    continue;
                }
                for s in [1i64, -1] {
                    let other = if s == 1 {
                        gens[j].0.clone()
                    } else {
                        gens[j].0.inv()?
                    };
                    let cand = &gens[i].0 * &other;
                    let size = unit_size(&cand)?;
                    if size < sizes[i] {
                        let e = std::array::from_fn(|t| gens[i].1[t] + s * gens[j].1[t]);
                        gens[i] = (cand, e);
                        sizes[i] = size;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            return Ok(());
        }
    }
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Unimodular 3×3 matrices with entries in `{-1, 0, 1}`, fewest nonzero
/// entries first.
fn small_unimodular() -> Vec<[[i64; 3]; 3]> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(9) {
        let mut m = [[0i64; 3]; 3];
        let mut c = code;
        for cell in m.iter_mut().flatten() {
            *cell = (c % 3) as i64 - 1;
            c /= 3;
        }
        if det3(&m).abs() == 1 {
            out.push(m);
        }
    }
    out.sort_by_key(|m| m.iter().flatten().filter(|x| **x != 0).count());
    out
}

/// A new basis `g'_i = ∏ g_j^{m_ij}` whose six cones are non-degenerate and
/// consistently oriented, or `None` when the given basis already is. Falls
/// back to a merely non-degenerate basis, and errors if none is found.
fn adapt_to_cones(
    k: &BiquadField,
    gens: &[BiquadElem; 3],
    exps: &[[i64; 3]; 3],
) -> Result<Option<([BiquadElem; 3], [[i64; 3]; 3])>> {
    if cone_quality(k, gens)? == 2 {
        return Ok(None);
    }
    let inv: Vec<BiquadElem> = gens.iter().map(|g| g.inv()).collect::<Result<_>>()?;
    let mut fallback = None;
    for m in small_unimodular() {
        let mut g: Vec<BiquadElem> = Vec::with_capacity(3);
        for row in &m {
            let mut u = k.one();
            for j in 0..3 {
                match row[j] {
                    1 => u = &u * &gens[j],
                    -1 => u = &u * &inv[j],
                    _ => {}
                }
            }
            g.push(u);
        }
        let g = [g[0].clone(), g[1].clone(), g[2].clone()];
        let e = std::array::from_fn(|i| {
            std::array::from_fn(|t| (0..3).map(|j| m[i][j] * exps[j][t]).sum())
        });
        match cone_quality(k, &g)? {
            2 => return Ok(Some((g, e))),
            1 if fallback.is_none() => fallback = Some((g, e)),
            _ => {}
        }
    }
    if cone_quality(k, gens)? == 1 {
        return Ok(None);
    }
    match fallback {
        Some(f) => Ok(Some(f)),
        None => Err(Error::DegenerateCone(
            "no generator triple gives six full cones".into(),
        )),
    }
}

pub fn totally_positive_units(k: &BiquadField) -> Result<UnitGroup> {
    let sub = subfield_units(k)?;
    let eps: Vec<BiquadElem> = sub
        .iter()
        .map(|u| k.embed_quad(&u.fundamental))
        .collect::<Result<_>>()?;
    let minus_one = k.int_elem([-1, 0, 0, 0]);

    // square classes: c with ±ε^c a square
    let mut roots: Vec<([u8; 3], BiquadElem)> = Vec::new();
    for mask in 1u8..8 {
        let c = [mask & 1, (mask >> 1) & 1, (mask >> 2) & 1];
        let mut prod = k.one();
        for j in 0..3 {
            if c[j] == 1 {
                prod = &prod * &eps[j];
            }
        }
        let all_norm_one = (0..3).all(|j| c[j] == 0 || sub[j].norm == 1);
        let mut found = None;
        if all_norm_one {
            // ε^c is totally positive; Kubota decides, exact root verifies
            found = unit_square_test(k, &sub, c)?;
            debug_assert_eq!(found.is_some(), exact_sqrt(&prod).is_some());
        } else {
            for cand in [prod.clone(), -&prod] {
                if let Some(r) = exact_sqrt(&cand) {
                    found = Some(r);
                    break;
                }
            }
        }
        if let Some(r) = found {
            roots.push((c, r));
        }
    }
    let mut space: Vec<[u8; 3]> = roots.iter().map(|x| x.0).collect();
    space.push([0, 0, 0]);
    for a in &space {
        for b in &space {
            let s = [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2]];
            if !space.contains(&s) {
                return Err(Error::Mismatch(
                    "square classes are not closed under products".into(),
                ));
            }
        }
    }
    let square_classes: Vec<[u8; 3]> = roots.iter().map(|x| x.0).collect();

    // basis of the full unit lattice modulo torsion, with doubled exponents
    let ech = f2_echelon(&square_classes);
    let pivots: Vec<usize> = ech.iter().map(|x| x.1).collect();
    let mut lam: Vec<(BiquadElem, [i64; 3])> = Vec::new();
    for (c, _) in &ech {
        let r = roots.iter().find(|x| x.0 == *c).unwrap().1.clone();
        lam.push((r, [c[0] as i64, c[1] as i64, c[2] as i64]));
    }
    for j in 0..3 {
        if !pivots.contains(&j) {
            let mut e = [0i64; 3];
            e[j] = 2;
            lam.push((eps[j].clone(), e));
        }
    }
    let sv: Vec<u8> = lam.iter().map(|x| sign_bits(&x.0)).collect();
    let v0 = 0b1111u8;
    let mut all = sv.clone();
    all.push(v0);
    let index_total_pos = 1u32 << f2_rank(&all);
    let index_squares = 16 / index_total_pos;

    // kernel of the sign map modulo -1
    let mut kernel: Vec<[u8; 3]> = Vec::new();
    for mask in 0u8..8 {
        let a = [mask & 1, (mask >> 1) & 1, (mask >> 2) & 1];
        let mut s = 0u8;
        for i in 0..3 {
            if a[i] == 1 {
                s ^= sv[i];
            }
        }
        if s == 0 || s == v0 {
            kernel.push(a);
        }
    }
    let kech = f2_echelon(&kernel);
    let kpiv: Vec<usize> = kech.iter().map(|x| x.1).collect();
    let mut gens: Vec<(BiquadElem, [i64; 3])> = Vec::new();
    for (a, _) in &kech {
        let mut u = k.one();
        let mut e = [0i64; 3];
        for i in 0..3 {
            if a[i] == 1 {
                u = &u * &lam[i].0;
                for j in 0..3 {
                    e[j] += lam[i].1[j];
                }
            }
        }
        if sign_bits(&u) == v0 {
            u = &u * &minus_one;
        }
        gens.push((u, e));
    }
    for i in 0..3 {
        if !kpiv.contains(&i) {
            let u = &lam[i].0 * &lam[i].0;
            let e = lam[i].1.map(|x| 2 * x);
            gens.push((u, e));
        }
    }
    reduce_basis(&mut gens)?;
    for g in gens.iter_mut() {
        if g.0.signs() != [1, 1, 1, 1] {
            return Err(Error::Mismatch(format!(
                "generator {} is not totally positive",
                g.0
            )));
        }
        let gt1 = (&g.0 - &k.one()).signs()[0] > 0;
        if !gt1 {
            g.0 = g.0.inv()?;
            g.1 = g.1.map(|x| -x);
        }
    }
    let lattice = [gens[0].1, gens[1].1, gens[2].1];
    let sub_det: i64 = sub
        .iter()
        .map(|u| if u.norm == 1 { 2 } else { 4 })
        .product();
    let extra_units = det3(&lattice).abs() != sub_det;
    let (gens, gen_exponents, labels) = if !extra_units {
        let g: Vec<BiquadElem> = sub
            .iter()
            .map(|u| k.embed_quad(&u.totally_positive))
            .collect::<Result<_>>()?;
        let e = [0, 1, 2].map(|j| {
            let mut v = [0i64; 3];
            v[j] = if sub[j].norm == 1 { 2 } else { 4 };
            v
        });
        (
            [g[0].clone(), g[1].clone(), g[2].clone()],
            e,
            ["p".to_string(), "q".to_string(), "r".to_string()],
        )
    } else {
        (
            [gens[0].0.clone(), gens[1].0.clone(), gens[2].0.clone()],
            lattice,
            ["1".to_string(), "2".to_string(), "3".to_string()],
        )
    };
    let (gens, gen_exponents, labels) = match adapt_to_cones(k, &gens, &gen_exponents)? {
        Some((g, e)) => (g, e, ["1".to_string(), "2".to_string(), "3".to_string()]),
        None => (gens, gen_exponents, labels),
    };
    for g in &gens {
        let inv = g.inv()?;
        if !g.is_integral() || !inv.is_integral() || !g.norm().is_one() {
            return Err(Error::Mismatch(format!("generator {g} is not a unit")));
        }
    }
    Ok(UnitGroup {
        field: *k,
        subfield: sub,
        gens,
        gen_exponents,
        labels,
        index_total_pos,
        index_squares,
        square_classes,
        extra_units,
    })
}
