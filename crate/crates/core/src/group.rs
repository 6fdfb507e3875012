//! Finite groups as validated Cayley tables.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Default refusal threshold for subgroup enumeration and the heavier
/// tensor computations downstream.
pub const DEFAULT_ORDER_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be positive")]
    Empty,
    #[error("table has {rows} rows and {labels} labels but order {order}")]
    Shape {
        order: usize,
        rows: usize,
        labels: usize,
    },
    #[error("row {row} has length {len}, expected {order}")]
    RowLength {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("no identity element")]
    NoIdentity,
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unsupported parameter for {kind}: {value}")]
    Parameter { kind: &'static str, value: usize },
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderAboveCap { order: usize, cap: usize },
    #[error("element {witness} of the smaller set is not in the larger subgroup")]
    NotContained { witness: String },
    #[error("element {0} is not in the group")]
    BadElement(usize),
}

/// A finite group given by its multiplication table.
///
/// Elements are indices `0..order`. Every constructor goes through
/// [`FiniteGroup::from_table`], so a value of this type always satisfies
/// the group axioms (checked exhaustively).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        rows: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if labels.len() != order {
            return Err(GroupError::Shape {
                order,
                rows: rows.len(),
                labels: labels.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l) {
                return Err(GroupError::DuplicateLabel(l.clone()));
            }
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::RowLength {
                    row: i,
                    len: row.len(),
                    order,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
            table.extend_from_slice(row);
        }
        for i in 0..order {
            if !is_permutation((0..order).map(|j| table[i * order + j]), order) {
                return Err(GroupError::RowNotPermutation(i));
            }
        }
        for j in 0..order {
            if !is_permutation((0..order).map(|i| table[i * order + j]), order) {
                return Err(GroupError::ColumnNotPermutation(j));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(GroupError::NotAssociative {
                            a: labels[a].clone(),
                            b: labels[b].clone(),
                            c: labels[c].clone(),
                        });
                    }
                }
            }
        }
        // Latin rows give a unique right inverse; associativity makes it two-sided.
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == identity)
                    .expect("latin square row contains the identity")
            })
            .collect();
        Ok(FiniteGroup {
            name: name.into(),
            order,
            table,
            identity,
            inverses,
            labels,
        })
    }

    /// `Z/nZ`, labels `0..n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Parameter {
                kind: "cyclic",
                value: n,
            });
        }
        let rows = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let labels = (0..n).map(|a| a.to_string()).collect();
        Self::from_table(format!("cyclic:{n}"), labels, rows)
    }

    /// The dihedral group of order `2n`, elements `r^k s^f`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Parameter {
                kind: "dihedral",
                value: n,
            });
        }
        let idx = |k: usize, f: usize| f * n + k;
        let mut rows = vec![vec![0; 2 * n]; 2 * n];
        for f in 0..2 {
            for k in 0..n {
                for g in 0..2 {
                    for l in 0..n {
                        // r^k s^f r^l s^g = r^{k + (-1)^f l} s^{f+g}
                        let rot = if f == 0 { (k + l) % n } else { (k + n - l) % n };
                        rows[idx(k, f)][idx(l, g)] = idx(rot, (f + g) % 2);
                    }
                }
            }
        }
        let labels = (0..2 * n)
            .map(|i| {
                let (k, f) = (i % n, i / n);
                match (k, f) {
                    (0, 0) => "e".to_string(),
                    (0, 1) => "s".to_string(),
                    (k, 0) => format!("r{k}"),
                    (k, _) => format!("r{k}s"),
                }
            })
            .collect();
        Self::from_table(format!("dihedral:{n}"), labels, rows)
    }

    /// The symmetric group on `n <= 4` points, permutations in
    /// lexicographic order of their images (identity first).
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 4 {
            return Err(GroupError::Parameter {
                kind: "symmetric",
                value: n,
            });
        }
        let perms = permutations(n);
        let index_of = |p: &[usize]| {
            perms
                .iter()
                .position(|q| q == p)
                .expect("closed under composition")
        };
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| {
                        // (ab)(i) = a(b(i))
                        let c: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                        index_of(&c)
                    })
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        Self::from_table(format!("symmetric:{n}"), labels, rows)
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion8() -> Result<Self, GroupError> {
        // unit index u in {1,i,j,k} = 0..4, sign bit s; element = 2u + s
        const UNIT_MUL: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let rows = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (u, neg) = UNIT_MUL[a / 2][b / 2];
                        let sign = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
                        2 * u + sign as usize
                    })
                    .collect()
            })
            .collect();
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        Self::from_table("quaternion:8", labels, rows)
    }

    /// Direct product, elements `(a, b)` at index `a * |B| + b`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self, GroupError> {
        let (na, nb) = (a.order, b.order);
        let rows = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let labels = (0..na * nb)
            .map(|x| format!("({},{})", a.labels[x / nb], b.labels[x % nb]))
            .collect();
        Self::from_table(format!("product:{},{}", a.name, b.name), labels, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Row-major table rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[usize]) -> Result<Subgroup, GroupError> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= self.order) {
            return Err(GroupError::BadElement(bad));
        }
        let mut inside = vec![false; self.order];
        let mut queue = VecDeque::from([self.identity]);
        inside[self.identity] = true;
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let members = (0..self.order).filter(|&x| inside[x]).collect();
        Ok(Subgroup::new_checked(self, members))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::new_checked(self, self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::new_checked(self, vec![self.identity])
    }

    /// All subgroups, sorted by order and then by member list.
    ///
    /// Starts from the cyclic subgroups and repeatedly adjoins one outside
    /// element to every known subgroup until nothing new appears.
    pub fn enumerate_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
        if self.order > cap {
            return Err(GroupError::OrderAboveCap {
                order: self.order,
                cap,
            });
        }
        let mut known: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        for g in self.elements() {
            let h = self.generate(&[g])?;
            if known.insert(h.members.clone()) {
                queue.push_back(h.members);
            }
        }
        while let Some(members) = queue.pop_front() {
            let mut inside = vec![false; self.order];
            for &m in &members {
                inside[m] = true;
            }
            for g in self.elements().filter(|&g| !inside[g]) {
                let mut gens = members.clone();
                gens.push(g);
                let k = self.generate(&gens)?;
                if known.insert(k.members.clone()) {
                    queue.push_back(k.members);
                }
            }
        }
        let mut out: Vec<Subgroup> = known
            .into_iter()
            .map(|m| Subgroup::new_checked(self, m))
            .collect();
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        Ok(out)
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn is_permutation(it: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut hit = vec![false; n];
    for x in it {
        if hit[x] {
            return false;
        }
        hit[x] = true;
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Cycle notation on points `1..=n`, `e` for the identity.
fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        s.push('(');
        s.push_str(&parts.join(" "));
        s.push(')');
    }
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

/// A subgroup, stored as its sorted member indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    fn new_checked(group: &FiniteGroup, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.binary_search(&group.identity()).is_ok());
        debug_assert!(members.iter().all(|&a| {
            members.binary_search(&group.inverse(a)).is_ok()
                && members
                    .iter()
                    .all(|&b| members.binary_search(&group.mul(a, b)).is_ok())
        }));
        assert_eq!(
            group.order() % members.len(),
            0,
            "Lagrange violated: subgroup of order {} in group of order {}",
            members.len(),
            group.order()
        );
        Subgroup { members }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect()
    }

    pub fn labels<'g>(&self, group: &'g FiniteGroup) -> Vec<&'g str> {
        self.members.iter().map(|&m| group.label(m)).collect()
    }
}

/// `[sup : sub]`, refusing when `sub` is not contained in `sup`.
pub fn subgroup_index(
    group: &FiniteGroup,
    sub: &Subgroup,
    sup: &Subgroup,
) -> Result<usize, GroupError> {
    if let Some(&w) = sub.members.iter().find(|&&x| !sup.contains(x)) {
        return Err(GroupError::NotContained {
            witness: group.label(w).to_string(),
        });
    }
    assert_eq!(sup.order() % sub.order(), 0, "Lagrange violated");
    Ok(sup.order() / sub.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orders(subs: &[Subgroup]) -> Vec<usize> {
        subs.iter().map(Subgroup::order).collect()
    }

    /// Brute force over all subsets; only for tiny groups.
    fn subgroups_by_subsets(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u32..1 << n)
            .filter(|mask| {
                let has = |x: usize| mask & (1 << x) != 0;
                has(g.identity())
                    && (0..n).all(|a| {
                        !has(a)
                            || (has(g.inverse(a)) && (0..n).all(|b| !has(b) || has(g.mul(a, b))))
                    })
            })
            .count()
    }

    #[test]
    fn constructors_have_expected_orders() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::dihedral(4).unwrap().order(), 8);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(FiniteGroup::quaternion8().unwrap().order(), 8);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let p = FiniteGroup::product(&c2, &s3).unwrap();
        assert_eq!(p.order(), 12);
        assert!(!p.is_abelian());
        assert!(FiniteGroup::symmetric(5).is_err());
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroup::quaternion8().unwrap();
        let [i, j, k, m1] = ["i", "j", "k", "-1"].map(|l| q.element_by_label(l).unwrap());
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(q.mul(i, j), k), m1);
        // every subgroup of Q8 other than the whole group is cyclic; there are 6
        assert_eq!(q.enumerate_subgroups(24).unwrap().len(), 6);
    }

    #[test]
    fn rejects_bad_tables() {
        let l = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let err = FiniteGroup::from_table("x", l(2), vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::RowNotPermutation(1));
        // Latin square without an identity-preserving associative law
        let rows = vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]];
        let err = FiniteGroup::from_table("x", l(3), rows).unwrap_err();
        assert!(matches!(
            err,
            GroupError::NoIdentity | GroupError::NotAssociative { .. }
        ));
        // a Latin square with identity that is not associative (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", l(5), rows).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "{err}");
        assert!(FiniteGroup::from_table("x", l(1), vec![vec![3]]).is_err());
        assert_eq!(
            FiniteGroup::from_table("x", vec![], vec![]).unwrap_err(),
            GroupError::Empty
        );
    }

    #[test]
    fn subgroup_counts() {
        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(orders(&trivial.enumerate_subgroups(24).unwrap()), vec![1]);
        for p in [2, 3, 5, 7, 11, 13] {
            let g = FiniteGroup::cyclic(p).unwrap();
            assert_eq!(orders(&g.enumerate_subgroups(24).unwrap()), vec![1, p]);
        }
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(
            orders(&c6.enumerate_subgroups(24).unwrap()),
            vec![1, 2, 3, 6]
        );
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.enumerate_subgroups(24).unwrap().len(), 6);
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert_eq!(s4.enumerate_subgroups(24).unwrap().len(), 30);
    }

    #[test]
    fn enumeration_agrees_with_subset_scan() {
        let groups = [
            FiniteGroup::cyclic(8).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::quaternion8().unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
            FiniteGroup::product(
                &FiniteGroup::cyclic(2).unwrap(),
                &FiniteGroup::cyclic(4).unwrap(),
            )
            .unwrap(),
        ];
        for g in &groups {
            assert_eq!(
                g.enumerate_subgroups(24).unwrap().len(),
                subgroups_by_subsets(g),
                "{}",
                g.name()
            );
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert_eq!(
            s4.enumerate_subgroups(12).unwrap_err(),
            GroupError::OrderAboveCap { order: 24, cap: 12 }
        );
    }

    #[test]
    fn lattice_is_closed_under_intersection() {
        for g in [
            FiniteGroup::symmetric(4).unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
        ] {
            let subs = g.enumerate_subgroups(24).unwrap();
            let sets: BTreeSet<&[usize]> = subs.iter().map(|s| s.members()).collect();
            for a in &subs {
                for b in &subs {
                    assert!(sets.contains(a.intersection(b).as_slice()));
                }
            }
        }
    }

    #[test]
    fn indices() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let subs = d3.enumerate_subgroups(24).unwrap();
        let whole = d3.whole();
        let e = d3.trivial_subgroup();
        assert_eq!(subgroup_index(&d3, &whole, &whole).unwrap(), 1);
        assert_eq!(subgroup_index(&d3, &e, &whole).unwrap(), 6);
        let two = subs.iter().find(|s| s.order() == 2).unwrap();
        assert_eq!(subgroup_index(&d3, two, &whole).unwrap(), 3);
        let three = subs.iter().find(|s| s.order() == 3).unwrap();
        let err = subgroup_index(&d3, two, three).unwrap_err();
        assert!(matches!(err, GroupError::NotContained { .. }));
        for a in &subs {
            for b in &subs {
                if a.is_subset_of(b) {
                    assert_eq!(subgroup_index(&d3, a, b).unwrap() * a.order(), b.order());
                }
            }
        }
    }

    #[test]
    fn cyclic_subgroup_orders_are_the_divisors() {
        for n in 1..=24 {
            let g = FiniteGroup::cyclic(n).unwrap();
            let subs = g.enumerate_subgroups(24).unwrap();
            let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(orders(&subs), divisors);
        }
    }

    #[test]
    fn symmetric_labels() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.label(0), "e");
        assert!(s3.labels().iter().any(|l| l == "(1 2 3)"));
    }
}
