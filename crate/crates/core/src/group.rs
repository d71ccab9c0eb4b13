//! Permutation groups with a base and strong generating set, plus the
//! element-enumeration machinery used for conjugacy classes, normalizers
//! and Sylow 2-subgroups at desk scale.

use crate::perm::Perm;
use crate::{Error, Result, DEFAULT_MAX_ORDER};
use once_cell::sync::OnceCell;
use std::collections::HashMap;

struct ChainLevel {
    point: usize,
    gens: Vec<Perm>,
    /// orbit point -> transversal element u with u(base point) = orbit point
    transversal: HashMap<usize, Perm>,
    orbit: Vec<usize>,
}

impl ChainLevel {
    fn new(point: usize, degree: usize) -> ChainLevel {
        let mut transversal = HashMap::new();
        transversal.insert(point, Perm::identity(degree));
        ChainLevel { point, gens: Vec::new(), transversal, orbit: vec![point] }
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.transversal.clear();
        self.transversal.insert(self.point, Perm::identity(degree));
        self.orbit.clear();
        self.orbit.push(self.point);
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            i += 1;
            let ux = self.transversal[&x].clone();
            for g in &self.gens {
                let y = g.apply(x);
                if !self.transversal.contains_key(&y) {
                    self.transversal.insert(y, g.compose(&ux));
                    self.orbit.push(y);
                }
            }
        }
    }
}

/// A finite permutation group with order and membership queries backed by a
/// Schreier-Sims stabilizer chain.  Construction enforces the size guard.
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: Vec<ChainLevel>,
    order: u64,
    max_order: u64,
    elements_cell: OnceCell<Elements>,
}

pub struct Elements {
    pub list: Vec<Perm>,
    pub index: HashMap<Perm, u32>,
}

impl PermGroup {
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        Self::with_max_order(degree, gens, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(degree: usize, gens: Vec<Perm>, max_order: u64) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidPerm(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut chain: Vec<ChainLevel> = Vec::new();
        for g in &gens {
            Self::extend_chain(&mut chain, degree, 0, g.clone(), max_order)?;
        }
        let order = chain.iter().map(|l| l.orbit.len() as u64).product();
        if order > max_order {
            return Err(Error::SizeGuard { order, max: max_order });
        }
        Ok(PermGroup { degree, gens, chain, order, max_order, elements_cell: OnceCell::new() })
    }

    /// Insert a strong generator at the given level and close under Schreier
    /// generators below it.
    fn extend_chain(
        chain: &mut Vec<ChainLevel>,
        degree: usize,
        level: usize,
        g: Perm,
        max_order: u64,
    ) -> Result<()> {
        if g.is_identity() {
            return Ok(());
        }
        if level == chain.len() {
            let moved = (0..degree).find(|&x| g.apply(x) != x).unwrap();
            chain.push(ChainLevel::new(moved, degree));
        }
        // already in the group generated so far?
        if Self::sift_from(chain, level, &g).is_none() {
            return Ok(());
        }
        chain[level].gens.push(g);
        chain[level].recompute_orbit(degree);
        let order: u64 = chain.iter().map(|l| l.orbit.len() as u64).product();
        if order > max_order.saturating_mul(2) {
            // provisional overshoot guard so pathological inputs fail fast
            return Err(Error::SizeGuard { order, max: max_order });
        }
        // process Schreier generators of this level
        loop {
            let mut new_gen: Option<Perm> = None;
            {
                let lvl = &chain[level];
                'outer: for x in &lvl.orbit {
                    let ux = &lvl.transversal[x];
                    for s in &lvl.gens {
                        let y = s.apply(*x);
                        let uy = &lvl.transversal[&y];
                        let schreier = uy.inverse().compose(s).compose(ux);
                        if schreier.is_identity() {
                            continue;
                        }
                        if let Some((_l, residue)) = Self::sift_from(chain, level + 1, &schreier)
                        {
                            new_gen = Some(residue);
                            break 'outer;
                        }
                    }
                }
            }
            match new_gen {
                Some(residue) => {
                    Self::extend_chain(chain, degree, level + 1, residue, max_order)?;
                }
                None => break,
            }
        }
        Ok(())
    }

    /// Sift g through levels starting at `level`; None means it reduced to
    /// the identity, Some gives the level and residue where it got stuck.
    fn sift_from(chain: &[ChainLevel], level: usize, g: &Perm) -> Option<(usize, Perm)> {
        let mut h = g.clone();
        for (i, lvl) in chain.iter().enumerate().skip(level) {
            let x = h.apply(lvl.point);
            match lvl.transversal.get(&x) {
                Some(u) => h = u.inverse().compose(&h),
                None => return Some((i, h)),
            }
        }
        if h.is_identity() {
            None
        } else {
            Some((chain.len(), h))
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn max_order(&self) -> u64 {
        self.max_order
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && Self::sift_from(&self.chain, 0, g).is_none()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Full element list, computed once by closure and cached.
    pub fn elements(&self) -> &Elements {
        self.elements_cell.get_or_init(|| {
            let mut list = vec![Perm::identity(self.degree)];
            let mut index: HashMap<Perm, u32> = HashMap::new();
            index.insert(list[0].clone(), 0);
            let mut i = 0;
            while i < list.len() {
                let x = list[i].clone();
                i += 1;
                for g in &self.gens {
                    let y = g.compose(&x);
                    if !index.contains_key(&y) {
                        index.insert(y.clone(), list.len() as u32);
                        list.push(y);
                    }
                }
            }
            debug_assert_eq!(list.len() as u64, self.order);
            Elements { index, list }
        })
    }

    /// The exact 2-part of the group order.
    pub fn order_two_part(&self) -> u64 {
        let mut n = self.order;
        let mut t = 1;
        while n % 2 == 0 {
            t *= 2;
            n /= 2;
        }
        t
    }
}

/// Conjugacy class data over the enumerated elements of a group.
pub struct ConjClasses {
    pub reps: Vec<Perm>,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    /// indices into `group.elements().list`, grouped per class
    pub members: Vec<Vec<u32>>,
    class_of_index: Vec<u32>,
}

impl ConjClasses {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    /// Class index of an arbitrary element (must belong to the group).
    pub fn class_of(&self, group: &PermGroup, g: &Perm) -> usize {
        let idx = *group
            .elements()
            .index
            .get(g)
            .unwrap_or_else(|| panic!("element not in group: {:?}", g));
        self.class_of_index[idx as usize] as usize
    }

    /// lcm of the element orders: the exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1u64, |a, &b| num::integer::lcm(a, b))
    }

    pub fn identity_class(&self) -> usize {
        // identity is element 0 of the enumeration
        self.class_of_index[0] as usize
    }

    /// Class index of the inverses of a class.
    pub fn inverse_class(&self, group: &PermGroup, k: usize) -> usize {
        self.class_of(group, &self.reps[k].inverse())
    }
}

/// Orbit partition of the enumerated elements under conjugation by the
/// generators.  The identity class comes first; the rest follow in order of
/// first appearance in the element enumeration.
pub fn conjugacy_classes(group: &PermGroup) -> Result<ConjClasses> {
    let elems = group.elements();
    let n = elems.list.len();
    let mut class_of_index = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut element_orders = Vec::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    for start in 0..n {
        if class_of_index[start] != u32::MAX {
            continue;
        }
        let cls = reps.len() as u32;
        let mut stack = vec![start as u32];
        class_of_index[start] = cls;
        let mut posn = 0;
        while posn < stack.len() {
            let x_idx = stack[posn];
            posn += 1;
            let x = &elems.list[x_idx as usize];
            for g in group.generators() {
                let y = x.conjugate_by(g);
                let y_idx = elems.index[&y];
                if class_of_index[y_idx as usize] == u32::MAX {
                    class_of_index[y_idx as usize] = cls;
                    stack.push(y_idx);
                }
            }
        }
        reps.push(elems.list[start].clone());
        sizes.push(stack.len() as u64);
        element_orders.push(elems.list[start].order());
        members.push(stack);
    }
    debug_assert_eq!(sizes.iter().sum::<u64>(), group.order());
    Ok(ConjClasses { reps, sizes, element_orders, members, class_of_index })
}

/// The permutation of class indices induced by g -> g^m.
pub fn power_map(group: &PermGroup, classes: &ConjClasses, m: i64) -> Vec<usize> {
    classes
        .reps
        .iter()
        .map(|r| classes.class_of(group, &r.pow(m)))
        .collect()
}

/// N_G(H) = {g in G : g s g^-1 in H for every generator s of H}, by
/// filtering the enumerated elements of G.
pub fn normalizer(group: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
    let elems = group.elements();
    let mut norm_gens: Vec<Perm> = Vec::new();
    let mut found: Vec<Perm> = Vec::new();
    for g in &elems.list {
        if sub.generators().iter().all(|s| sub.contains(&s.conjugate_by(g))) {
            found.push(g.clone());
        }
    }
    // the filtered set is the full normalizer, so it generates itself
    norm_gens.extend(found);
    PermGroup::with_max_order(group.degree(), norm_gens, group.max_order())
}

/// A Sylow 2-subgroup, grown by normalizer climbing: starting from a cyclic
/// 2-subgroup, repeatedly pick a 2-element of N_G(P) outside P until the
/// order reaches the full 2-part.
pub fn sylow2(group: &PermGroup) -> Result<PermGroup> {
    let target = group.order_two_part();
    let degree = group.degree();
    if target == 1 {
        return PermGroup::with_max_order(degree, vec![], group.max_order());
    }
    let elems = group.elements();
    let two_part_of = |g: &Perm| -> Perm {
        // largest 2-power-order power of g
        let ord = g.order();
        let mut odd = ord;
        while odd % 2 == 0 {
            odd /= 2;
        }
        g.pow(odd as i64)
    };
    // seed: any nontrivial 2-element
    let seed = elems
        .list
        .iter()
        .map(two_part_of)
        .find(|t| !t.is_identity())
        .expect("group of even order has a nontrivial 2-element");
    let mut p = PermGroup::with_max_order(degree, vec![seed], group.max_order())?;
    while p.order() < target {
        let norm = normalizer(group, &p)?;
        let next = norm
            .elements()
            .list
            .iter()
            .map(two_part_of)
            .find(|t| !t.is_identity() && !p.contains(t))
            .expect("normalizer of a non-Sylow 2-subgroup contains a new 2-element");
        let mut gens = p.generators().to_vec();
        gens.push(next);
        p = PermGroup::with_max_order(degree, gens, group.max_order())?;
    }
    debug_assert_eq!(p.order(), target);
    Ok(p)
}

pub fn is_self_normalizing_sylow2(group: &PermGroup) -> Result<bool> {
    let p = sylow2(group)?;
    let n = normalizer(group, &p)?;
    Ok(n.order() == p.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(img: &[u16]) -> Perm {
        Perm::from_images(img.to_vec()).unwrap()
    }

    pub fn symmetric(n: usize) -> PermGroup {
        let mut t: Vec<u16> = (0..n as u16).collect();
        t.swap(0, 1);
        let c: Vec<u16> = (0..n as u16).map(|i| ((i + 1) % n as u16)).collect();
        PermGroup::from_generators(n, vec![perm(&t), perm(&c)]).unwrap()
    }

    #[test]
    fn s4_has_order_24() {
        let g = symmetric(4);
        assert_eq!(g.order(), 24);
        assert!(g.contains(&perm(&[3, 2, 1, 0])));
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::from_generators(5, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.contains(&Perm::identity(5)));
        assert!(!g.contains(&perm(&[1, 0, 2, 3, 4])));
    }

    #[test]
    fn s4_classes() {
        let g = symmetric(4);
        let cls = conjugacy_classes(&g).unwrap();
        assert_eq!(cls.count(), 5);
        let mut sizes = cls.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(cls.exponent(), 12);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let c6 = PermGroup::from_generators(6, vec![perm(&[1, 2, 3, 4, 5, 0])]).unwrap();
        let cls = conjugacy_classes(&c6).unwrap();
        assert_eq!(cls.count(), 6);
        assert!(cls.sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn power_map_s3() {
        let g = symmetric(3);
        let cls = conjugacy_classes(&g).unwrap();
        let id = power_map(&g, &cls, 1);
        assert_eq!(id, (0..cls.count()).collect::<Vec<_>>());
        let all_to_identity = power_map(&g, &cls, 6);
        assert!(all_to_identity.iter().all(|&k| k == cls.identity_class()));
        // squaring: transpositions go to the identity class, 3-cycles stay
        let sq = power_map(&g, &cls, 2);
        for k in 0..cls.count() {
            match cls.element_orders[k] {
                2 => assert_eq!(sq[k], cls.identity_class()),
                3 => assert_eq!(sq[k], k),
                _ => {}
            }
        }
    }

    #[test]
    fn sylow2_of_s4() {
        let g = symmetric(4);
        let p = sylow2(&g).unwrap();
        assert_eq!(p.order(), 8);
        let n = normalizer(&g, &p).unwrap();
        assert_eq!(n.order(), 8);
        assert!(is_self_normalizing_sylow2(&g).unwrap());
    }

    #[test]
    fn sylow2_of_odd_group_is_trivial() {
        let c3 = PermGroup::from_generators(3, vec![perm(&[1, 2, 0])]).unwrap();
        let p = sylow2(&c3).unwrap();
        assert_eq!(p.order(), 1);
        assert!(!is_self_normalizing_sylow2(&c3).unwrap());
    }

    #[test]
    fn normalizer_of_whole_group() {
        let g = symmetric(4);
        let h = symmetric(4);
        let n = normalizer(&g, &h).unwrap();
        assert_eq!(n.order(), 24);
    }

    #[test]
    fn size_guard_fires() {
        // S_10 has order 3628800 > 200000
        let res = {
            let n = 10;
            let mut t: Vec<u16> = (0..n as u16).collect();
            t.swap(0, 1);
            let c: Vec<u16> = (0..n as u16).map(|i| ((i + 1) % n as u16)).collect();
            PermGroup::from_generators(n, vec![perm(&t), perm(&c)])
        };
        assert!(matches!(res, Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn class_of_is_conjugation_invariant() {
        let g = symmetric(5);
        let cls = conjugacy_classes(&g).unwrap();
        let elems= g.elements();
        for step in [1usize, 7, 13, 29] {
            for i in (0..elems.list.len()).step_by(step) {
                let x = &elems.list[i];
                let h = &elems.list[(i * 31 + step) % elems.list.len()];
                assert_eq!(cls.class_of(&g, x), cls.class_of(&g, &x.conjugate_by(h)));
            }
        }
    }
}
