//! Small finite fields F_q (q = p^k odd, q <= a few hundred) with table-based
//! arithmetic, matrices over them, and conversion of matrix groups to
//! permutation groups on nonzero vectors or projective points.

use crate::perm::Perm;
use crate::{Error, Result};
use serde::Deserialize;
use std::sync::Arc;

/// Field elements are encoded as 0..q-1; for q = p^k the code digits are the
/// base-p coefficients of the polynomial representative, least degree first.
#[derive(Clone)]
pub struct Fq {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    neg: Vec<u16>,
    /// discrete log base `primitive` for nonzero elements (index q wasted)
    dlog: Vec<u16>,
    pub primitive: u16,
}

impl Fq {
    pub fn new(q: u32) -> Result<Arc<Fq>> {
        let (p, k) = factor_prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        let qs = q as usize;
        // multiplication of polynomial codes modulo an irreducible polynomial
        let digits = |mut x: u32| -> Vec<u32> {
            let mut d = vec![0u32; k as usize];
            for item in d.iter_mut() {
                *item = x % p;
                x /= p;
            }
            d
        };
        let encode = |d: &[u32]| -> u32 { d.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let irreducible = find_irreducible(p, k);
        let polymul = |a: u32, b: u32| -> u32 {
            let da = digits(a);
            let db = digits(b);
            let mut prod = vec![0u32; 2 * k as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // reduce modulo the monic irreducible of degree k
            for d in (k as usize..prod.len()).rev() {
                let c = prod[d];
                if c == 0 {
                    continue;
                }
                prod[d] = 0;
                for (j, &m) in irreducible.iter().enumerate().take(k as usize) {
                    let idx = d - k as usize + j;
                    prod[idx] = (prod[idx] + c * (p - m) % p) % p;
                }
            }
            encode(&prod[..k as usize])
        };
        let mut add = vec![0u16; qs * qs];
        let mut mul = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&sum) as u16;
                mul[(a * q + b) as usize] = polymul(a, b) as u16;
            }
        }
        let mut neg = vec![0u16; qs];
        for a in 0..q {
            let da = digits(a);
            let n: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = encode(&n) as u16;
        }
        let mut inv = vec![0u16; qs];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u16;
                    break;
                }
            }
        }
        // find a primitive element and record discrete logs
        let mut primitive = 0u16;
        let mut dlog = vec![0u16; qs];
        'search: for cand in 2..q {
            let mut seen = vec![false; qs];
            let mut x = 1u32;
            for e in 0..(q - 1) {
                if seen[x as usize] {
                    continue 'search;
                }
                seen[x as usize] = true;
                dlog[x as usize] = e as u16;
                x = mul[(x * q + cand) as usize] as u32;
            }
            primitive = cand as u16;
            break;
        }
        assert!(q == 2 || primitive != 0, "no primitive element found");
        Ok(Arc::new(Fq { p, k, q, add, mul, inv, neg, dlog, primitive }))
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[(a as u32 * self.q + b as u32) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[(a as u32 * self.q + b as u32) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// Discrete log of a nonzero element with respect to the fixed primitive
    /// element; this pins the character omega(primitive^j) = zeta_(q-1)^j.
    #[inline]
    pub fn dlog(&self, a: u16) -> u16 {
        debug_assert!(a != 0);
        self.dlog[a as usize]
    }

    pub fn pow(&self, mut a: u16, mut e: u64) -> u16 {
        let mut acc = 1u16;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
}

pub fn factor_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut k = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

/// Monic irreducible polynomial of degree k over F_p, as coefficient vector
/// of length k (the x^k coefficient is implicitly 1): found by scanning.
fn find_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0];
    }
    let total = (p as u64).pow(k);
    'cand: for code in 0..total {
        let mut coeffs = vec![0u32; k as usize];
        let mut x = code;
        for c in coeffs.iter_mut() {
            *c = (x % p as u64) as u32;
            x /= p as u64;
        }
        // irreducible over F_p iff no root for k <= 3; for k <= 2 (all we
        // need here) the root test is exact, but handle k = 3 too
        assert!(k <= 3, "only field degrees up to 3 are supported");
        let eval = |t: u64| -> u64 {
            let mut acc = 1u64; // monic leading term
            for c in coeffs.iter().rev() {
                acc = (acc * t + *c as u64) % p as u64;
            }
            acc
        };
        for t in 0..p as u64 {
            if eval(t) == 0 {
                continue 'cand;
            }
        }
        return coeffs;
    }
    unreachable!("irreducible polynomial exists for every degree")
}

/// Square matrix over a small finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<u16>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut a = vec![0u16; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u16 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, f: &Fq, other: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat { n, a: vec![0u16; n * n] };
        for i in 0..n {
            for l in 0..n {
                let x = self.at(i, l);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = other.at(l, j);
                    if y != 0 {
                        let cur = out.at(i, j);
                        out.set(i, j, f.add(cur, f.mul(x, y)));
                    }
                }
            }
        }
        out
    }

    /// Inverse by Gaussian elimination; None if singular.
    pub fn inv(&self, f: &Fq) -> Option<Mat> {
        let n = self.n;
        let mut m = self.clone();
        let mut out = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| m.at(r, col) != 0)?;
            if pivot != col {
                for j in 0..n {
                    m.a.swap(col * n + j, pivot * n + j);
                    out.a.swap(col * n + j, pivot * n + j);
                }
            }
            let s = f.inv(m.at(col, col));
            for j in 0..n {
                m.set(col, j, f.mul(s, m.at(col, j)));
                out.set(col, j, f.mul(s, out.at(col, j)));
            }
            for r in 0..n {
                if r != col && m.at(r, col) != 0 {
                    let factor = m.at(r, col);
                    for j in 0..n {
                        let v = f.sub(m.at(r, j), f.mul(factor, m.at(col, j)));
                        m.set(r, j, v);
                        let w = f.sub(out.at(r, j), f.mul(factor, out.at(col, j)));
                        out.set(r, j, w);
                    }
                }
            }
        }
        Some(out)
    }

    pub fn apply(&self, f: &Fq, v: &[u16]) -> Vec<u16> {
        let n = self.n;
        let mut out = vec![0u16; n];
        for i in 0..n {
            let mut acc = 0u16;
            for j in 0..n {
                let x = self.at(i, j);
                if x != 0 && v[j] != 0 {
                    acc = f.add(acc, f.mul(x, v[j]));
                }
            }
            out[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut out = Mat { n, a: vec![0u16; n * n] };
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| i == j || self.at(i, j) == 0))
    }

    pub fn is_upper_triangular(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..i).all(|j| self.at(i, j) == 0))
    }

    /// Packed encoding; the supported sizes (n <= 4, q <= 16) fit in a u64.
    pub fn key(&self) -> u64 {
        debug_assert!(self.n * self.n <= 16);
        let mut k = 0u64;
        for &v in &self.a {
            debug_assert!(v < 16);
            k = (k << 4) | v as u64;
        }
        k
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatAction {
    Vectors,
    Projective,
}

/// The point set a matrix group acts on, in deterministic order
/// (lexicographic on coordinate tuples).
pub struct PointSet {
    pub points: Vec<Vec<u16>>,
    index: std::collections::HashMap<Vec<u16>, usize>,
    action: MatAction,
}

impl PointSet {
    pub fn new(f: &Fq, dim: usize, action: MatAction) -> PointSet {
        let q = f.q as usize;
        let total = q.pow(dim as u32);
        let mut points = Vec::new();
        for code in 1..total {
            let mut v = vec![0u16; dim];
            let mut x = code;
            // lexicographic: first coordinate most significant
            for i in (0..dim).rev() {
                v[i] = (x % q) as u16;
                x /= q;
            }
            match action {
                MatAction::Vectors => points.push(v),
                MatAction::Projective => {
                    // keep canonical representatives: first nonzero coord is 1
                    let lead = v.iter().find(|&&c| c != 0).copied().unwrap();
                    if lead == 1 {
                        points.push(v);
                    }
                }
            }
        }
        let index = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PointSet { points, index, action }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn canonical(&self, f: &Fq, mut v: Vec<u16>) -> Vec<u16> {
        if self.action == MatAction::Projective {
            let lead = v.iter().find(|&&c| c != 0).copied().expect("zero vector");
            if lead != 1 {
                let s = f.inv(lead);
                for c in v.iter_mut() {
                    *c = f.mul(s, *c);
                }
            }
        }
        v
    }

    pub fn perm_of(&self, f: &Fq, m: &Mat) -> Result<Perm> {
        let mut img = vec![0u16; self.points.len()];
        for (i, pt) in self.points.iter().enumerate() {
            let w = self.canonical(f, m.apply(f, pt));
            let j = *self
                .index
                .get(&w)
                .ok_or_else(|| Error::Consistency("matrix image left the point set".into()))?;
            img[i] = j as u16;
        }
        Perm::from_images(img)
    }
}

/// Faithful permutation image of a matrix group over F_q acting on nonzero
/// vectors (or projective points, in which case the image is the
/// corresponding projective quotient group).
pub fn matrix_group_to_perm(
    q: u32,
    dim: usize,
    generators: &[Mat],
    action: MatAction,
    max_order: u64,
) -> Result<crate::group::PermGroup> {
    let f = Fq::new(q)?;
    for g in generators {
        if g.n != dim {
            return Err(Error::InvalidInput("generator dimension mismatch".into()));
        }
        if g.inv(&f).is_none() {
            return Err(Error::SingularGenerator);
        }
    }
    let pts = PointSet::new(&f, dim, action);
    let perms: Result<Vec<Perm>> = generators.iter().map(|m| pts.perm_of(&f, m)).collect();
    crate::group::PermGroup::with_max_order(pts.len(), perms?, max_order)
}

/// JSON group descriptions accepted by the CLI and the corpus runner.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Perm {
        degree: usize,
        generators: Vec<Vec<u16>>,
        #[serde(default)]
        name: Option<String>,
    },
    MatFq {
        q: u32,
        dim: usize,
        generators: Vec<Vec<Vec<u16>>>,
        action: MatAction,
        #[serde(default)]
        name: Option<String>,
    },
}

impl GroupSpec {
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Perm { name, degree, .. } => {
                name.clone().unwrap_or_else(|| format!("perm-group-deg{degree}"))
            }
            GroupSpec::MatFq { name, q, dim, .. } => {
                name.clone().unwrap_or_else(|| format!("mat-group-{dim}d-F{q}"))
            }
        }
    }

    pub fn build(&self, max_order: u64) -> Result<crate::group::PermGroup> {
        match self {
            GroupSpec::Perm { degree, generators, .. } => {
                let gens: Result<Vec<Perm>> =
                    generators.iter().map(|v| Perm::from_images(v.clone())).collect();
                crate::group::PermGroup::with_max_order(*degree, gens?, max_order)
            }
            GroupSpec::MatFq { q, dim, generators, action, .. } => {
                let mats: Vec<Mat> = generators
                    .iter()
                    .map(|rows| {
                        if rows.len() != *dim || rows.iter().any(|r| r.len() != *dim) {
                            return Err(Error::InvalidInput("matrix shape mismatch".into()));
                        }
                        let mut a = Vec::with_capacity(dim * dim);
                        for row in rows {
                            for &v in row {
                                if v as u32 >= *q {
                                    return Err(Error::InvalidInput(format!(
                                        "entry {v} out of range for F_{q}"
                                    )));
                                }
                                a.push(v);
                            }
                        }
                        Ok(Mat { n: *dim, a })
                    })
                    .collect::<Result<Vec<Mat>>>()?;
                matrix_group_to_perm(*q, *dim, &mats, *action, max_order)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_field_axioms() {
        let f = Fq::new(9).unwrap();
        assert_eq!((f.p, f.k), (3, 2));
        for a in 0..9u16 {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.pow(f.primitive, f.dlog(a) as u64), a);
            }
            for b in 0..9u16 {
                assert_eq!(f.mul(a, b), f.mul(b, a));
            }
        }
        // multiplicative order of the primitive element is q - 1
        assert_eq!(f.pow(f.primitive, 8), 1);
        assert_ne!(f.pow(f.primitive, 4), 1);
    }

    fn sl2_gens(q: u32) -> Vec<Mat> {
        let f = Fq::new(q).unwrap();
        let mut gens = Vec::new();
        for i in 0..f.k {
            let t = f.pow(f.primitive, i as u64);
            let mut x = Mat::identity(2);
            x.set(0, 1, t);
            let mut y = Mat::identity(2);
            y.set(1, 0, t);
            gens.push(x);
            gens.push(y);
        }
        gens
    }

    #[test]
    fn sl2_3_on_nonzero_vectors() {
        let g = matrix_group_to_perm(3, 2, &sl2_gens(3), MatAction::Vectors, 200000).unwrap();
        assert_eq!(g.degree(), 8);
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn gl2_3_order() {
        let f = Fq::new(3).unwrap();
        let mut gens = sl2_gens(3);
        let mut d = Mat::identity(2);
        d.set(0, 0, f.primitive);
        gens.push(d);
        let g = matrix_group_to_perm(3, 2, &gens, MatAction::Vectors, 200000).unwrap();
        assert_eq!(g.order(), 48);
    }

    #[test]
    fn sl2_9_order() {
        let g = matrix_group_to_perm(9, 2, &sl2_gens(9), MatAction::Vectors, 200000).unwrap();
        assert_eq!(g.degree(), 80);
        assert_eq!(g.order(), 720); // q(q^2-1)
    }

    #[test]
    fn psl2_5_projective() {
        let g = matrix_group_to_perm(5, 2, &sl2_gens(5), MatAction::Projective, 200000).unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.order(), 60);
    }

    #[test]
    fn singular_generator_rejected() {
        let m = Mat { n: 2, a: vec![1, 1, 1, 1] };
        let e = matrix_group_to_perm(3, 2, &[m], MatAction::Vectors, 200000);
        assert!(matches!(e, Err(Error::SingularGenerator)));
    }

    #[test]
    fn group_spec_json_roundtrip() {
        let spec: GroupSpec = serde_json::from_str(
            r#"{"kind":"perm","degree":3,"generators":[[1,2,0]],"name":"C3"}"#,
        )
        .unwrap();
        assert_eq!(spec.name(), "C3");
        assert_eq!(spec.build(1000).unwrap().order(), 3);
        let spec: GroupSpec = serde_json::from_str(
            r#"{"kind":"matfq","q":3,"dim":2,"generators":[[[1,1],[0,1]],[[1,0],[1,1]]],"action":"vectors"}"#,
        )
        .unwrap();
        assert_eq!(spec.build(1000).unwrap().order(), 24);
    }
}
