//! Permutations of {0..d-1}, stored as image arrays.

use crate::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { img: (0..degree as u16).collect() }
    }

    /// Validates bijectivity.
    pub fn from_images(img: Vec<u16>) -> Result<Perm> {
        let d = img.len();
        if d > u16::MAX as usize {
            return Err(Error::InvalidPerm(format!("degree {d} too large")));
        }
        let mut seen = vec![false; d];
        for &x in &img {
            if (x as usize) >= d || seen[x as usize] {
                return Err(Error::InvalidPerm(format!("images {:?} are not a bijection", img)));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { img })
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.img[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Function composition: (a.compose(b))(x) = a(b(x)).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: other.img.iter().map(|&x| self.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u16; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[x as usize] = i as u16;
        }
        Perm { img }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let d = self.degree();
        if e < 0 {
            return self.inverse().pow(-e);
        }
        let mut acc = Perm::identity(d);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = base.compose(&acc);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// h g h^-1 where self = g.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        h.compose(self).compose(&h.inverse())
    }

    pub fn order(&self) -> u64 {
        let mut ord = 1u64;
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            loop {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
                if x == start {
                    break;
                }
            }
            ord = num::integer::lcm(ord, len);
        }
        ord
    }

    /// Direct sum, acting on the disjoint union of the two domains.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let d = self.degree();
        let mut img: Vec<u16> = self.img.clone();
        img.extend(other.img.iter().map(|&x| x + d as u16));
        Perm { img }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // cycle notation
        let mut seen = vec![false; self.degree()];
        let mut out = String::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            loop {
                seen[x] = true;
                out.push_str(&x.to_string());
                x = self.apply(x);
                if x == start {
                    break;
                }
                out.push(' ');
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        write!(f, "{}", out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(img: &[u16]) -> Perm {
        Perm::from_images(img.to_vec()).unwrap()
    }

    #[test]
    fn compose_and_inverse() {
        let a = p(&[1, 0, 2, 3]);
        let b = p(&[1, 2, 3, 0]);
        let ab = a.compose(&b);
        assert_eq!(ab.apply(0), a.apply(b.apply(0)));
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(b.order(), 4);
        assert_eq!(b.pow(4), Perm::identity(4));
        assert_eq!(b.pow(-1), b.inverse());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3]).is_err());
    }
}
