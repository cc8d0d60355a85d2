//! The symmetric group S4 on the points {1, 2, 3, 4}, its 30 subgroups, and
//! the permutation matrices of point stabilizers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Mul;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat4, ONE};
use crate::report::RelationReport;
use crate::s3world::S3Generators;

/// A bijection of {1, 2, 3, 4}; `images[i - 1]` is the image of `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Perm4 {
    images: [u8; 4],
}

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4 { images: [1, 2, 3, 4] };

    pub fn new(images: [u8; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &x in &images {
            if !(1..=4).contains(&x) || seen[x as usize - 1] {
                return Err(Error::PreconditionViolated(format!(
                    "{images:?} is not a permutation of 1..4"
                )));
            }
            seen[x as usize - 1] = true;
        }
        Ok(Perm4 { images })
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    /// Image of the point `i` in 1..=4.
    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize - 1]
    }

    /// All 24 permutations in lexicographic order of their images.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 1..=4u8 {
            for b in 1..=4u8 {
                for c in 1..=4u8 {
                    for d in 1..=4u8 {
                        if let Ok(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Perm4 {
        let mut images = [0u8; 4];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize - 1] = i as u8 + 1;
        }
        Perm4 { images }
    }

    pub fn order(&self) -> usize {
        let mut p = *self;
        let mut n = 1;
        while p != Perm4::IDENTITY {
            p = p * *self;
            n += 1;
        }
        n
    }

    pub fn fixes(&self, k: u8) -> bool {
        self.apply(k) == k
    }
}

/// `p * q` applies `p` first, then `q`.
impl Mul for Perm4 {
    type Output = Perm4;

    fn mul(self, rhs: Perm4) -> Perm4 {
        Perm4 {
            images: self.images.map(|x| rhs.apply(x)),
        }
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.images;
        write!(f, "[{a}{b}{c}{d}]")
    }
}

/// The matrix with a one in row `i`, column `p(i)`, so that
/// `perm_matrix(p * q) = perm_matrix(p) · perm_matrix(q)`.
pub fn perm_matrix(p: &Perm4) -> Mat4 {
    let mut m = Mat4::zero();
    for i in 1..=4u8 {
        m[(i as usize - 1, p.apply(i) as usize - 1)] = ONE;
    }
    m
}

/// A subgroup of S4 stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    elements: Vec<Perm4>,
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generate(gens: &[Perm4]) -> Subgroup {
        let mut set: BTreeSet<Perm4> = BTreeSet::from([Perm4::IDENTITY]);
        let mut frontier = vec![Perm4::IDENTITY];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x * *g;
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            elements: set.into_iter().collect(),
        }
    }

    pub fn elements(&self) -> &[Perm4] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm4) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements
            .iter()
            .all(|&p| self.elements.iter().all(|&q| p * q == q * p))
    }

    /// Closure under composition and inverses, and presence of the identity.
    pub fn is_closed(&self) -> bool {
        self.contains(&Perm4::IDENTITY)
            && self.elements.iter().all(|&p| {
                self.contains(&p.inverse()) && self.elements.iter().all(|&q| self.contains(&(p * q)))
            })
    }

    fn max_element_order(&self) -> usize {
        self.elements.iter().map(Perm4::order).max().unwrap_or(1)
    }
}

/// All subgroups of S4, ordered by size and then by element list.
///
/// Every subgroup of S4 is generated by at most two elements, so closing all
/// pairs finds them all.
pub fn enumerate_subgroups() -> Vec<Subgroup> {
    let all = Perm4::all();
    let mut found = BTreeSet::new();
    for (i, &p) in all.iter().enumerate() {
        for &q in &all[i..] {
            found.insert(Subgroup::generate(&[p, q]));
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.elements.cmp(&y.elements)));
    out
}

/// The six permutations fixing `k`.
pub fn stabilizer(k: u8) -> Result<Subgroup> {
    if !(1..=4).contains(&k) {
        return Err(Error::PreconditionViolated(format!("point {k} is not in 1..4")));
    }
    Ok(Subgroup {
        elements: Perm4::all().into_iter().filter(|p| p.fixes(k)).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupKind {
    Trivial,
    C2,
    C3,
    C4,
    Klein4,
    S3,
    D4,
    A4,
    S4,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::Trivial => "trivial",
            GroupKind::C2 => "C2",
            GroupKind::C3 => "C3",
            GroupKind::C4 => "C4",
            GroupKind::Klein4 => "V4",
            GroupKind::S3 => "S3",
            GroupKind::D4 => "D4",
            GroupKind::A4 => "A4",
            GroupKind::S4 => "S4",
        };
        f.write_str(s)
    }
}

/// Isomorphism type of a subgroup of S4.
///
/// Order alone decides every case except order 4. Order 6 is always S3
/// because S4 has no element of order 6.
pub fn classify(h: &Subgroup) -> GroupKind {
    match h.order() {
        1 => GroupKind::Trivial,
        2 => GroupKind::C2,
        3 => GroupKind::C3,
        4 if h.max_element_order() == 4 => GroupKind::C4,
        4 => GroupKind::Klein4,
        6 => GroupKind::S3,
        8 => GroupKind::D4,
        12 => GroupKind::A4,
        24 => GroupKind::S4,
        n => unreachable!("no subgroup of S4 has order {n}"),
    }
}

/// Dimension of the complex span of a set of matrices.
pub fn span_rank(mats: &[Mat4]) -> usize {
    let mut rows: Vec<Vec<crate::linalg::Complex64>> = mats
        .iter()
        .map(|m| m.0.iter().flat_map(|r| r.iter().copied()).collect())
        .collect();
    let mut rank = 0;
    for col in 0..16 {
        let Some(pivot) = (rank..rows.len()).max_by(|&a, &b| {
            rows[a][col].norm().total_cmp(&rows[b][col].norm())
        }) else {
            break;
        };
        if rows[pivot][col].norm() < 1e-12 {
            continue;
        }
        rows.swap(rank, pivot);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest {
            let factor = row[col] / pivot_row[col];
            for (x, &p) in row.iter_mut().zip(pivot_row).skip(col) {
                *x -= factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// The subgroup facts the S3 world rests on, one check each.
pub fn check_s4_facts() -> RelationReport {
    let mut r = RelationReport::new();
    let subs = enumerate_subgroups();
    r.record_with("S4 has 30 subgroups", subs.len() == 30, subs.len().to_string());

    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for h in &subs {
        *by_order.entry(h.order()).or_default() += 1;
    }
    let want = BTreeMap::from([(1, 1), (2, 9), (3, 4), (4, 7), (6, 4), (8, 3), (12, 1), (24, 1)]);
    r.record_with("subgroup counts by order", by_order == want, format!("{by_order:?}"));
    r.record(
        "every subgroup is closed and its order divides 24",
        subs.iter().all(|h| h.is_closed() && 24 % h.order() == 0),
    );

    let sixes: Vec<&Subgroup> = subs.iter().filter(|h| h.order() == 6).collect();
    r.record_with("4 subgroups of order 6", sixes.len() == 4, sixes.len().to_string());
    r.record(
        "every order-6 subgroup is S3",
        sixes.iter().all(|h| classify(h) == GroupKind::S3 && !h.is_abelian()),
    );

    let all = Perm4::all();
    r.record(
        "perm_matrix is a homomorphism on all 576 pairs",
        all.iter()
            .all(|&p| all.iter().all(|&q| perm_matrix(&(p * q)) == perm_matrix(&p) * perm_matrix(&q))),
    );

    let g = S3Generators::new();
    let stab4 = stabilizer(4).expect("4 is a point");
    let images: Vec<Mat4> = stab4.elements().iter().map(perm_matrix).collect();
    let named = g.named();
    let same_set = images.len() == named.len()
        && images.iter().all(|m| named.iter().any(|(_, n)| *n == m))
        && named.iter().all(|(_, n)| images.contains(n));
    r.record("stabilizer(4) matrices are exactly {1, H1, H2, H3, A, B}", same_set);
    r.record("stabilizer(4) is one of the order-6 subgroups", sixes.contains(&&stab4));
    let rank = span_rank(&images);
    r.record_with("span of stabilizer(4) matrices has dimension 5", rank == 5, rank.to_string());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: [u8; 4]) -> Perm4 {
        Perm4::new(images).unwrap()
    }

    #[test]
    fn construction_rejects_non_bijections() {
        assert!(Perm4::new([1, 1, 2, 3]).is_err());
        assert!(Perm4::new([0, 1, 2, 3]).is_err());
        assert!(Perm4::new([2, 3, 4, 5]).is_err());
        assert_eq!(Perm4::all().len(), 24);
    }

    #[test]
    fn group_axioms() {
        let all = Perm4::all();
        for &a in &all {
            assert_eq!(a * a.inverse(), Perm4::IDENTITY);
            assert_eq!(a * Perm4::IDENTITY, a);
            for &b in &all {
                for &c in all.iter().step_by(5) {
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(perm_matrix(&Perm4::IDENTITY), Mat4::identity());
        let g = S3Generators::new();
        assert_eq!(perm_matrix(&p([2, 3, 1, 4])), g.a);
        assert_eq!(perm_matrix(&p([3, 1, 2, 4])), g.b);
        assert_eq!(perm_matrix(&p([2, 1, 3, 4])), g.h[0]);
    }

    #[test]
    fn matrix_map_is_a_homomorphism() {
        let all = Perm4::all();
        for &a in &all {
            for &b in &all {
                assert_eq!(perm_matrix(&(a * b)), perm_matrix(&a) * perm_matrix(&b));
            }
        }
    }

    #[test]
    fn subgroup_table() {
        let subs = enumerate_subgroups();
        assert_eq!(subs.len(), 30);
        let mut by_order = BTreeMap::new();
        for h in &subs {
            *by_order.entry(h.order()).or_insert(0) += 1;
            assert_eq!(24 % h.order(), 0);
            assert!(h.is_closed());
        }
        let want = BTreeMap::from([(1, 1), (2, 9), (3, 4), (4, 7), (6, 4), (8, 3), (12, 1), (24, 1)]);
        assert_eq!(by_order, want);
        assert_eq!(subs[0].order(), 1);
        assert_eq!(subs[29].order(), 24);
        assert_eq!(subs, enumerate_subgroups());
    }

    #[test]
    fn classification_counts() {
        let mut kinds = BTreeMap::new();
        for h in enumerate_subgroups() {
            *kinds.entry(classify(&h)).or_insert(0) += 1;
        }
        assert_eq!(kinds[&GroupKind::S3], 4);
        assert_eq!(kinds[&GroupKind::C4], 3);
        assert_eq!(kinds[&GroupKind::Klein4], 4);
        assert_eq!(kinds[&GroupKind::D4], 3);
    }

    #[test]
    fn stabilizers() {
        let subs = enumerate_subgroups();
        for k in 1..=4 {
            let s = stabilizer(k).unwrap();
            assert_eq!(s.order(), 6);
            assert!(!s.is_abelian());
            assert_eq!(classify(&s), GroupKind::S3);
            assert!(subs.contains(&s));
        }
        assert!(stabilizer(0).is_err());
        assert!(stabilizer(5).is_err());
    }

    #[test]
    fn fourth_point_stabilizer_realizes_the_s3_operators() {
        let g = S3Generators::new();
        let mut want: Vec<Mat4> = g.named().iter().map(|(_, m)| **m).collect();
        let mut got: Vec<Mat4> = stabilizer(4).unwrap().elements().iter().map(perm_matrix).collect();
        let key = |m: &Mat4| format!("{m}");
        want.sort_by_key(key);
        got.sort_by_key(key);
        assert_eq!(got, want);
        assert_eq!(span_rank(&got), 5);
    }

    #[test]
    fn fact_suite_passes() {
        let r = check_s4_facts();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn span_rank_basics() {
        assert_eq!(span_rank(&[Mat4::identity(), Mat4::identity().scale_re(2.0)]), 1);
        let all: Vec<Mat4> = Perm4::all().iter().map(perm_matrix).collect();
        // (n − 1)² + 1 for the permutation representation of S_n.
        assert_eq!(span_rank(&all), 10);
    }
}
