//! Exact ordinary character tables by the eigenvector method: the class
//! multiplication matrices are simultaneously diagonalized over a prime
//! field F_p with p = 1 mod e and p > 2 sqrt(|G|), and the character values
//! are then lifted exactly to Q(zeta_e) by discrete Fourier inversion over
//! the power maps.
//!
//! Every table is verified at construction time: row and column
//! orthogonality, sum of squared degrees, degree divisibility, and the
//! compatibility of the sigma action on values with the power map on
//! classes.

use crate::cyclotomic::{galois_exponent, is_prime, rat, Cyclotomic, Rat};
use crate::group::{ConjClasses, PermGroup};
use crate::{Error, Result};
use num::{One, Zero};
use serde::Serialize;

pub struct CharacterTable {
    pub order: u64,
    pub exponent: u64,
    /// row degrees, ascending; rows sorted by (degree, rendered values)
    pub degrees: Vec<u64>,
    /// values[row][class]
    pub values: Vec<Vec<Cyclotomic>>,
    pub class_sizes: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub class_reps: Vec<crate::perm::Perm>,
    /// class index of g^r for r the sigma exponent of the table field
    pub sigma_power_class: Vec<usize>,
    /// class index of inverses
    pub inverse_class: Vec<usize>,
}

/// F_p helpers on u64 (p < 2^31).
#[derive(Clone, Copy)]
struct Fp {
    p: u64,
}

impl Fp {
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }
    fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Smallest prime p = 1 mod e with p > 2 sqrt(order).
fn dixon_prime(exponent: u64, order: u64) -> Result<u64> {
    let cap: u64 = 1 << 31;
    let bound = {
        let mut b = 1u64;
        while b * b <= 4 * order {
            b += 1;
        }
        b // smallest integer with b^2 > 4*order, i.e. b > 2 sqrt(order)
    };
    let mut p = exponent + 1;
    while p < cap {
        if p >= bound && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::NoSuitablePrime { exponent, cap })
}

fn primitive_root(fp: Fp) -> u64 {
    let p = fp.p;
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    'outer: for g in 2..p {
        for f in &factors {
            if fp.pow(g, (p - 1) / f) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("prime field has a primitive root")
}

/// Column-echelon basis of a subspace of F_p^n; each basis vector has a
/// leading 1 at its pivot row and zeros at the other pivots.
struct Subspace {
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn from_vectors(fp: Fp, vecs: Vec<Vec<u64>>) -> Subspace {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in vecs {
            for (b, &pv) in basis.iter().zip(&pivots) {
                let c = v[pv];
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(b.iter()) {
                        *x = fp.sub(*x, fp.mul(c, *y));
                    }
                }
            }
            if let Some(pv) = v.iter().position(|&x| x != 0) {
                let s = fp.inv(v[pv]);
                for x in v.iter_mut() {
                    *x = fp.mul(s, *x);
                }
                // clear this pivot from existing basis vectors
                for b in basis.iter_mut() {
                    let c = b[pv];
                    if c != 0 {
                        for (x, y) in b.iter_mut().zip(v.iter()) {
                            *x = fp.sub(*x, fp.mul(c, *y));
                        }
                    }
                }
                basis.push(v);
                pivots.push(pv);
            }
        }
        Subspace { basis, pivots }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a vector known to lie in the subspace.
    fn coords(&self, fp: Fp, v: &[u64]) -> Vec<u64> {
        let co: Vec<u64> = self.pivots.iter().map(|&pv| v[pv]).collect();
        // consistency: the combination must reproduce v
        let mut rec = vec![0u64; v.len()];
        for (c, b) in co.iter().zip(&self.basis) {
            for (r, x) in rec.iter_mut().zip(b.iter()) {
                *r = fp.add(*r, fp.mul(*c, *x));
            }
        }
        debug_assert_eq!(rec, v, "vector not in subspace");
        co
    }
}

/// Characteristic polynomial of a small matrix over F_p by evaluation at
/// d+1 points and Lagrange interpolation.
fn char_poly(fp: Fp, a: &[Vec<u64>]) -> Vec<u64> {
    let d = a.len();
    let pts: Vec<u64> = (0..=d as u64).collect();
    let vals: Vec<u64> = pts
        .iter()
        .map(|&t| {
            let mut m: Vec<Vec<u64>> = a.to_vec();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = fp.sub(row[i], t);
            }
            det(fp, m)
        })
        .collect();
    // Lagrange interpolation back to coefficients
    let mut coeffs = vec![0u64; d + 1];
    for (i, &xi) in pts.iter().enumerate() {
        let mut num = vec![0u64; d + 1];
        num[0] = 1;
        let mut deg = 0usize;
        let mut den = 1u64;
        for (j, &xj) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            // num *= (x - xj)
            deg += 1;
            for k in (0..=deg).rev() {
                let lower = if k > 0 { num[k - 1] } else { 0 };
                num[k] = fp.add(fp.mul(num[k], fp.sub(0, xj)), lower);
            }
            den = fp.mul(den, fp.sub(xi, xj));
        }
        let scale = fp.mul(vals[i], fp.inv(den));
        for k in 0..=d {
            coeffs[k] = fp.add(coeffs[k], fp.mul(scale, num[k]));
        }
    }
    coeffs
}

fn det(fp: Fp, mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut sign = 1u64;
    let mut result = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            sign = fp.sub(0, sign);
        }
        result = fp.mul(result, m[col][col]);
        let inv = fp.inv(m[col][col]);
        for r in col + 1..n {
            if m[r][col] != 0 {
                let f = fp.mul(m[r][col], inv);
                for c in col..n {
                    let v = fp.mul(f, m[col][c]);
                    m[r][c] = fp.sub(m[r][c], v);
                }
            }
        }
    }
    fp.mul(sign, result)
}

fn kernel_basis(fp: Fp, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut m: Vec<Vec<u64>> = a.to_vec();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if let Some(piv) = (row..n).find(|&r| m[r][col] != 0) {
            m.swap(piv, row);
            let inv = fp.inv(m[row][col]);
            for c in 0..n {
                m[row][c] = fp.mul(m[row][c], inv);
            }
            for r in 0..n {
                if r != row && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..n {
                        let v = fp.mul(f, m[row][c]);
                        m[r][c] = fp.sub(m[r][c], v);
                    }
                }
            }
            pivot_col_of_row.push(col);
            row += 1;
        }
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_col_of_row.contains(c)).collect();
    let mut out = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![0u64; n];
        v[fc] = 1;
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = fp.sub(0, m[r][fc]);
        }
        out.push(v);
    }
    out
}

/// The class multiplication matrix M_i with (M_i)[j][k] = a_{ijk} =
/// #{x in C_i : x^{-1} g_k in C_j}, so that M_i u = omega_i u holds for
/// central character vectors u = (omega(K_k))_k.
fn class_matrix(group: &PermGroup, classes: &ConjClasses, i: usize) -> Vec<Vec<u64>> {
    let nc = classes.count();
    let elems = group.elements();
    let mut m = vec![vec![0u64; nc]; nc];
    for &x_idx in &classes.members[i] {
        let xinv = elems.list[x_idx as usize].inverse();
        for (k, rep) in classes.reps.iter().enumerate() {
            let y = xinv.compose(rep);
            let j = classes.class_of(group, &y);
            m[j][k] += 1;
        }
    }
    m
}

pub fn character_table(group: &PermGroup, classes: &ConjClasses) -> Result<CharacterTable> {
    let order = group.order();
    let nc = classes.count();
    let e = classes.exponent();
    let p = dixon_prime(e, order)?;
    let fp = Fp { p };
    debug_assert_eq!(classes.identity_class(), 0);

    // split the class algebra into common eigenspaces over F_p
    let full: Vec<Vec<u64>> = (0..nc)
        .map(|i| {
            let mut v = vec![0u64; nc];
            v[i] = 1;
            v
        })
        .collect();
    let mut spaces = vec![Subspace::from_vectors(fp, full)];
    let mut class_order: Vec<usize> = (1..nc).collect();
    class_order.sort_by_key(|&i| (classes.sizes[i], i));
    for i in class_order {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let mi = class_matrix(group, classes, i);
        let mut next: Vec<Subspace> = Vec::new();
        for s in spaces {
            if s.dim() == 1 {
                next.push(s);
                continue;
            }
            // restriction A of M_i to the subspace: M_i b_t = sum_u A[u][t] b_u
            let d = s.dim();
            let mut a = vec![vec![0u64; d]; d];
            for (t, b) in s.basis.iter().enumerate() {
                let mut img = vec![0u64; nc];
                for (r, row) in mi.iter().enumerate() {
                    let mut acc = 0u64;
                    for (c, &v) in row.iter().enumerate() {
                        if v != 0 && b[c] != 0 {
                            acc = fp.add(acc, fp.mul(v % p, b[c]));
                        }
                    }
                    img[r] = acc;
                }
                let co = s.coords(fp, &img);
                for (u, &cv) in co.iter().enumerate() {
                    a[u][t] = cv;
                }
            }
            let cp = char_poly(fp, &a);
            let mut eigen: Vec<u64> = Vec::new();
            for t in 0..p {
                let mut acc = 0u64;
                for c in cp.iter().rev() {
                    acc = fp.add(fp.mul(acc, t), *c);
                }
                if acc == 0 {
                    eigen.push(t);
                    if eigen.len() == d {
                        break;
                    }
                }
            }
            for t in eigen {
                let mut shifted = a.clone();
                for (r, row) in shifted.iter_mut().enumerate() {
                    row[r] = fp.sub(row[r], t);
                }
                let ker = kernel_basis(fp, &shifted);
                let lifted: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|kv| {
                        let mut v = vec![0u64; nc];
                        for (coef, b) in kv.iter().zip(&s.basis) {
                            if *coef != 0 {
                                for (x, y) in v.iter_mut().zip(b.iter()) {
                                    *x = fp.add(*x, fp.mul(*coef, *y));
                                }
                            }
                        }
                        v
                    })
                    .collect();
                next.push(Subspace::from_vectors(fp, lifted));
            }
        }
        spaces = next;
    }
    if spaces.len() != nc || spaces.iter().any(|s| s.dim() != 1) {
        return Err(Error::Consistency(
            "class algebra failed to split into one-dimensional eigenspaces".into(),
        ));
    }

    // central characters omega, normalized so the identity-class entry is 1
    let inverse_class: Vec<usize> = (0..nc).map(|k| classes.inverse_class(group, k)).collect();
    let mut rows_mod_p: Vec<Vec<u64>> = Vec::new();
    let mut degrees: Vec<u64> = Vec::new();
    for s in &spaces {
        let u = &s.basis[0];
        if u[0] == 0 {
            return Err(Error::Consistency("eigenvector vanishes on identity class".into()));
        }
        let scale = fp.inv(u[0]);
        let omega: Vec<u64> = u.iter().map(|&x| fp.mul(x, scale)).collect();
        // 1/chi(1)^2 = (1/|G|) sum_k omega_k omega_{k'} / |C_k|
        let mut s_acc = 0u64;
        for k in 0..nc {
            let term = fp.mul(
                fp.mul(omega[k], omega[inverse_class[k]]),
                fp.inv(classes.sizes[k] % p),
            );
            s_acc = fp.add(s_acc, term);
        }
        let d2 = fp.mul(order % p, fp.inv(s_acc));
        let mut deg = 0u64;
        for d in 1..p {
            if fp.mul(d, d) == d2 {
                deg = if d < p - d { d } else { p - d };
                break;
            }
        }
        if deg == 0 || deg * deg > order {
            return Err(Error::Consistency("could not recover a character degree".into()));
        }
        let row: Vec<u64> = (0..nc)
            .map(|k| fp.mul(fp.mul(omega[k], deg % p), fp.inv(classes.sizes[k] % p)))
            .collect();
        degrees.push(deg);
        rows_mod_p.push(row);
    }

    // lift values to Q(zeta_e) by Fourier inversion over the power maps
    let g0 = primitive_root(fp);
    let z = fp.pow(g0, (p - 1) / e);
    let zinv = fp.inv(z);
    let e_inv = fp.inv(e % p);
    // power_class[k][t] = class of g_k^t
    let mut power_class = vec![vec![0usize; e as usize]; nc];
    for (k, pc_row) in power_class.iter_mut().enumerate() {
        let rep = &classes.reps[k];
        let mut acc = crate::perm::Perm::identity(group.degree());
        for t in 0..e as usize {
            pc_row[t] = classes.class_of(group, &acc);
            acc = acc.compose(rep);
        }
    }
    let mut values: Vec<Vec<Cyclotomic>> = Vec::new();
    for row in &rows_mod_p {
        let mut vrow = Vec::with_capacity(nc);
        for k in 0..nc {
            let ord_k = classes.element_orders[k];
            let mut x = Cyclotomic::zero(e as u32);
            for m in 0..e {
                // c_m = e^{-1} sum_t chi(g_k^t) z^{-mt}
                let mut acc = 0u64;
                let step = fp.pow(zinv, m);
                let mut factor = 1u64;
                for t in 0..e as usize {
                    acc = fp.add(acc, fp.mul(row[power_class[k][t]], factor));
                    factor = fp.mul(factor, step);
                }
                let c_m = fp.mul(acc, e_inv);
                if c_m != 0 {
                    // multiplicities are genuine integers below p
                    if c_m > order {
                        return Err(Error::Consistency(
                            "eigenvalue multiplicity out of range".into(),
                        ));
                    }
                    if (m * ord_k) % e != 0 {
                        return Err(Error::Consistency(
                            "eigenvalue of order not dividing the element order".into(),
                        ));
                    }
                    x = x.add(
                        &Cyclotomic::root_of_unity(e as u32, m as i64).scale(&rat(c_m as i64)),
                    );
                }
            }
            vrow.push(x);
        }
        values.push(vrow);
    }

    // deterministic row order: by degree, then by rendered values
    let rendered: Vec<String> = values
        .iter()
        .map(|row| row.iter().map(|v| v.render_bare()).collect::<Vec<_>>().join("|"))
        .collect();
    let mut perm_rows: Vec<usize> = (0..nc).collect();
    perm_rows
        .sort_by(|&a, &b| degrees[a].cmp(&degrees[b]).then_with(|| rendered[a].cmp(&rendered[b])));
    let degrees: Vec<u64> = perm_rows.iter().map(|&i| degrees[i]).collect();
    let mut values_opt: Vec<Option<Vec<Cyclotomic>>> = values.into_iter().map(Some).collect();
    let values: Vec<Vec<Cyclotomic>> =
        perm_rows.iter().map(|&i| values_opt[i].take().unwrap()).collect();

    let r = galois_exponent(e as u32) as i64;
    let sigma_power_class: Vec<usize> =
        (0..nc).map(|k| classes.class_of(group, &classes.reps[k].pow(r))).collect();

    let table = CharacterTable {
        order,
        exponent: e,
        degrees,
        values,
        class_sizes: classes.sizes.clone(),
        class_orders: classes.element_orders.clone(),
        class_reps: classes.reps.clone(),
        sigma_power_class,
        inverse_class,
    };
    table.verify()?;
    Ok(table)
}

impl CharacterTable {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    /// Row index of the character obtained by applying sigma entrywise.
    pub fn sigma_on_character(&self, row: usize) -> Result<usize> {
        let image: Vec<Cyclotomic> = self.values[row].iter().map(|v| v.apply_sigma()).collect();
        for (j, cand) in self.values.iter().enumerate() {
            if *cand == image {
                return Ok(j);
            }
        }
        Err(Error::Consistency(format!("sigma image of row {row} is not a table row")))
    }

    pub fn odd_degree_rows(&self) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] % 2 == 1).collect()
    }

    /// <a, b> = (1/|G|) sum_k |C_k| a_k conj(b_k), exactly.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        inner_product_with(self.order, &self.class_sizes, a, b)
    }

    /// Multiplicities <f, chi_i>; errors if any is not a nonnegative integer,
    /// and verifies the reconstruction sum m_i chi_i = f.
    pub fn irr_constituents(&self, f: &[Cyclotomic]) -> Result<Vec<(usize, u64)>> {
        let mut out = Vec::new();
        let mut recon: Vec<Cyclotomic> = vec![Cyclotomic::zero(1); self.class_count()];
        for (i, row) in self.values.iter().enumerate() {
            let m = self.inner_product(f, row);
            let Some(q) = m.as_rational() else {
                return Err(Error::Consistency(format!("non-rational multiplicity at row {i}")));
            };
            if !q.is_integer() || q < Rat::zero() {
                return Err(Error::Consistency(format!(
                    "inner product with row {i} is {q}, not a nonnegative integer"
                )));
            }
            let m_int = q.to_integer();
            let m_u64 = u64::try_from(m_int.clone())
                .map_err(|_| Error::Consistency("multiplicity overflow".into()))?;
            if m_u64 > 0 {
                out.push((i, m_u64));
                for (k, v) in recon.iter_mut().enumerate() {
                    *v = v.add(&row[k].scale(&Rat::from_integer(m_int.clone())));
                }
            }
        }
        for (k, v) in recon.iter().enumerate() {
            if *v != f[k] {
                return Err(Error::Consistency("constituent reconstruction failed".into()));
            }
        }
        Ok(out)
    }

    /// Full verification suite; run at construction and again by the
    /// acceptance tests on every corpus table.
    pub fn verify(&self) -> Result<()> {
        let nc = self.class_count();
        let fail = |msg: String| Err(Error::Consistency(msg));
        for (i, row) in self.values.iter().enumerate() {
            if row[0] != Cyclotomic::integer(self.degrees[i] as i64) {
                return fail(format!("row {i} identity value disagrees with its degree"));
            }
            if self.order % self.degrees[i] != 0 {
                return fail(format!("degree {} does not divide {}", self.degrees[i], self.order));
            }
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order {
            return fail(format!("sum of squared degrees {sum_sq} != order {}", self.order));
        }
        for i in 0..nc {
            for j in i..nc {
                let ip = self.inner_product(&self.values[i], &self.values[j]);
                let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero(1) };
                if ip != want {
                    return fail(format!("row orthogonality fails at ({i},{j})"));
                }
            }
        }
        // column orthogonality: sum_chi chi(g) conj(chi(g)) = |C_G(g)|
        for k in 0..nc {
            let mut acc = Cyclotomic::zero(1);
            for row in &self.values {
                acc = acc.add(&row[k].mul(&row[k].conj()));
            }
            let cent = self.order / self.class_sizes[k];
            if acc != Cyclotomic::integer(cent as i64) {
                return fail(format!("column orthogonality fails at class {k}"));
            }
        }
        // sigma action: entrywise sigma permutes rows and equals the power map
        let mut fixed_rows = 0usize;
        for i in 0..nc {
            let j = self.sigma_on_character(i)?;
            if j == i {
                fixed_rows += 1;
            }
            for k in 0..nc {
                let lhs = self.values[i][k].apply_sigma();
                let rhs = &self.values[i][self.sigma_power_class[k]];
                if lhs != *rhs {
                    return fail(format!("sigma(chi(g)) != chi(g^r) at row {i}, class {k}"));
                }
            }
        }
        // Brauer permutation count: sigma-fixed rows = power-map-fixed classes
        let fixed_classes = (0..nc).filter(|&k| self.sigma_power_class[k] == k).count();
        if fixed_rows != fixed_classes {
            return fail(format!(
                "sigma fixes {fixed_rows} rows but the power map fixes {fixed_classes} classes"
            ));
        }
        Ok(())
    }

    pub fn dump(&self) -> TableDump {
        TableDump {
            order: self.order,
            exponent: self.exponent,
            classes: (0..self.class_count())
                .map(|k| ClassDump {
                    rep: self.class_reps[k].images().iter().map(|&x| x as usize).collect(),
                    size: self.class_sizes[k],
                    element_order: self.class_orders[k],
                })
                .collect(),
            rows: (0..self.degrees.len())
                .map(|i| RowDump {
                    degree: self.degrees[i],
                    values: self.values[i].iter().map(|v| v.render()).collect(),
                })
                .collect(),
        }
    }
}

pub fn inner_product_with(
    order: u64,
    class_sizes: &[u64],
    a: &[Cyclotomic],
    b: &[Cyclotomic],
) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(1);
    for (k, size) in class_sizes.iter().enumerate() {
        let term = a[k].mul(&b[k].conj()).scale(&rat(*size as i64));
        acc = acc.add(&term);
    }
    acc.scale(&Rat::new(num::BigInt::one(), num::BigInt::from(order)))
}

#[derive(Serialize)]
pub struct TableDump {
    pub order: u64,
    pub exponent: u64,
    pub classes: Vec<ClassDump>,
    pub rows: Vec<RowDump>,
}

#[derive(Serialize)]
pub struct ClassDump {
    pub rep: Vec<usize>,
    pub size: u64,
    pub element_order: u64,
}

#[derive(Serialize)]
pub struct RowDump {
    pub degree: u64,
    pub values: Vec<String>,
}

/// Character of G induced from a class function on a subgroup H (same
/// permutation domain).  Classes of H are fused into classes of G, and the
/// induced-character formula is evaluated exactly.
pub fn induce(
    g: &PermGroup,
    g_classes: &ConjClasses,
    h: &PermGroup,
    h_classes: &ConjClasses,
    lambda: &[Cyclotomic],
) -> Result<Vec<Cyclotomic>> {
    if !h.is_subgroup_of(g) {
        return Err(Error::InvalidInput("induction requires a subgroup".into()));
    }
    if lambda.len() != h_classes.count() {
        return Err(Error::InvalidInput("class function length mismatch".into()));
    }
    let fusion: Vec<usize> = h_classes.reps.iter().map(|r| g_classes.class_of(g, r)).collect();
    let mut out = Vec::with_capacity(g_classes.count());
    for k in 0..g_classes.count() {
        // Ind(lambda)(g_k) = (|G| / (|C_k| |H|)) sum over H-classes D fused
        // into C_k of |D| lambda(D)
        let mut acc = Cyclotomic::zero(1);
        for (d, &fk) in fusion.iter().enumerate() {
            if fk == k {
                acc = acc.add(&lambda[d].scale(&rat(h_classes.sizes[d] as i64)));
            }
        }
        let factor = Rat::new(
            num::BigInt::from(g.order()),
            num::BigInt::from(g_classes.sizes[k] * h.order()),
        );
        out.push(acc.scale(&factor));
    }
    Ok(out)
}

/// Restriction of a class function on G to the classes of a subgroup H.
pub fn restrict(
    g: &PermGroup,
    g_classes: &ConjClasses,
    h_classes: &ConjClasses,
    chi: &[Cyclotomic],
) -> Vec<Cyclotomic> {
    h_classes.reps.iter().map(|r| chi[g_classes.class_of(g, r)].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugacy_classes;
    use crate::perm::Perm;

    fn perm(img: &[u16]) -> Perm {
        Perm::from_images(img.to_vec()).unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let mut t: Vec<u16> = (0..n as u16).collect();
        t.swap(0, 1);
        let c: Vec<u16> = (0..n as u16).map(|i| ((i + 1) % n as u16)).collect();
        PermGroup::from_generators(n, vec![perm(&t), perm(&c)]).unwrap()
    }

    fn table_of(g: &PermGroup) -> CharacterTable {
        let cls = conjugacy_classes(g).unwrap();
        character_table(g, &cls).unwrap()
    }

    #[test]
    fn s3_table() {
        let g = symmetric(3);
        let t = table_of(&g);
        assert_eq!(t.degrees, vec![1, 1, 2]);
        for row in &t.values {
            for v in row {
                assert!(v.as_rational().is_some(), "S3 values are rational");
            }
        }
    }

    #[test]
    fn c3_table_is_cube_roots() {
        let g = PermGroup::from_generators(3, vec![perm(&[1, 2, 0])]).unwrap();
        let t = table_of(&g);
        assert_eq!(t.degrees, vec![1, 1, 1]);
        let z3 = Cyclotomic::root_of_unity(3, 1);
        assert!(t.values.iter().any(|row| row.iter().any(|v| *v == z3)));
    }

    #[test]
    fn s4_table() {
        let g = symmetric(4);
        let t = table_of(&g);
        assert_eq!(t.degrees, vec![1, 1, 2, 3, 3]);
        assert_eq!(t.odd_degree_rows().len(), 4);
    }

    #[test]
    fn sl2_3_table_degrees() {
        let mut x = crate::fq::Mat::identity(2);
        x.set(0, 1, 1);
        let mut y = crate::fq::Mat::identity(2);
        y.set(1, 0, 1);
        let g =
            crate::fq::matrix_group_to_perm(3, 2, &[x, y], crate::fq::MatAction::Vectors, 200000)
                .unwrap();
        let cls = conjugacy_classes(&g).unwrap();
        assert_eq!(cls.count(), 7);
        let t = character_table(&g, &cls).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn sl2_5_sigma_swaps_degree_3_rows() {
        let mut x = crate::fq::Mat::identity(2);
        x.set(0, 1, 1);
        let mut y = crate::fq::Mat::identity(2);
        y.set(1, 0, 1);
        let g =
            crate::fq::matrix_group_to_perm(5, 2, &[x, y], crate::fq::MatAction::Vectors, 200000)
                .unwrap();
        let cls = conjugacy_classes(&g).unwrap();
        let t = character_table(&g, &cls).unwrap();
        let threes: Vec<usize> = (0..t.degrees.len()).filter(|&i| t.degrees[i] == 3).collect();
        assert_eq!(threes.len(), 2);
        assert_eq!(t.sigma_on_character(threes[0]).unwrap(), threes[1]);
        assert_eq!(t.sigma_on_character(threes[1]).unwrap(), threes[0]);
    }

    #[test]
    fn induce_from_c3_to_s3() {
        let g = symmetric(3);
        let g_cls = conjugacy_classes(&g).unwrap();
        let h = PermGroup::from_generators(3, vec![perm(&[1, 2, 0])]).unwrap();
        let h_cls = conjugacy_classes(&h).unwrap();
        let h_t = character_table(&h, &h_cls).unwrap();
        let lam_row =
            (0..3).find(|&i| h_t.values[i].iter().any(|v| v.as_rational().is_none())).unwrap();
        let lam = h_t.values[lam_row].clone();
        let ind = induce(&g, &g_cls, &h, &h_cls, &lam).unwrap();
        let g_t = character_table(&g, &g_cls).unwrap();
        let two = (0..3).find(|&i| g_t.degrees[i] == 2).unwrap();
        assert_eq!(ind, g_t.values[two]);
        // induce(1_H) at the identity is the index [G:H]
        let one = vec![Cyclotomic::one(); h_cls.count()];
        let ind1 = induce(&g, &g_cls, &h, &h_cls, &one).unwrap();
        assert_eq!(ind1[g_cls.identity_class()], Cyclotomic::integer(2));
    }

    #[test]
    fn constituents_of_regular_character() {
        let g = symmetric(3);
        let cls = conjugacy_classes(&g).unwrap();
        let t = character_table(&g, &cls).unwrap();
        let mut reg = vec![Cyclotomic::zero(1); cls.count()];
        reg[cls.identity_class()] = Cyclotomic::integer(6);
        let cons = t.irr_constituents(&reg).unwrap();
        assert_eq!(cons.len(), 3);
        for (row, mult) in cons {
            assert_eq!(mult, t.degrees[row]);
        }
        for i in 0..3 {
            let c = t.irr_constituents(&t.values[i]).unwrap();
            assert_eq!(c, vec![(i, 1)]);
        }
    }

    #[test]
    fn restriction_roundtrip() {
        let g = symmetric(4);
        let g_cls = conjugacy_classes(&g).unwrap();
        let t = character_table(&g, &g_cls).unwrap();
        // restrict the degree-3 rows to A4 and compare degrees
        let a4 = PermGroup::from_generators(
            4,
            vec![perm(&[1, 2, 0, 3]), perm(&[0, 2, 3, 1])],
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
        let h_cls = conjugacy_classes(&a4).unwrap();
        let three = (0..5).find(|&i| t.degrees[i] == 3).unwrap();
        let res = restrict(&g, &g_cls, &h_cls, &t.values[three]);
        assert_eq!(res[h_cls.identity_class()], Cyclotomic::integer(3));
    }
}
