//! Finite groups as Cayley tables, with the subgroup/coset machinery needed
//! for induced representations and coset-admissible sampling sets.
//!
//! Elements are dense indices `0..order`. Constructors fix the numbering:
//! cyclic `k -> k`, dihedral `(rotation a, reflection bit b) -> a + n*b`,
//! affine `(k, l) -> (l-1)*p + k`. The identity is always index 0 for the
//! built-in kinds.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Cyclic,
    Dihedral,
    Affine,
}

impl GroupKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(GroupKind::Cyclic),
            "dihedral" => Ok(GroupKind::Dihedral),
            "affine" => Ok(GroupKind::Affine),
            other => Err(Error::Config(format!(
                "unknown group kind '{other}' (expected cyclic|dihedral|affine)"
            ))),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic => write!(f, "cyclic"),
            GroupKind::Dihedral => write!(f, "dihedral"),
            GroupKind::Affine => write!(f, "affine"),
        }
    }
}

#[derive(Debug, PartialEq)]
struct GroupData {
    order: usize,
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    labels: Vec<String>,
    kind: Option<(GroupKind, u64)>,
}

/// A finite group given by its Cayley table. Cheap to clone (shared storage)
/// and immutable after construction.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.data.kind {
            Some((kind, param)) => write!(f, "{kind}({param})"),
            None => write!(f, "custom({})", self.order()),
        }
    }
}

impl FiniteGroup {
    /// Build one of the catalog groups.
    pub fn build(kind: GroupKind, param: u64) -> Result<FiniteGroup> {
        match kind {
            GroupKind::Cyclic => FiniteGroup::cyclic(param),
            GroupKind::Dihedral => FiniteGroup::dihedral(param),
            GroupKind::Affine => FiniteGroup::affine(param),
        }
    }

    /// Z/nZ with elements the residues 0..n and addition mod n.
    pub fn cyclic(n: u64) -> Result<FiniteGroup> {
        if n < 1 {
            return Err(Error::InvalidGroup("cyclic requires param >= 1".into()));
        }
        let n = n as usize;
        let cayley: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        let labels = (0..n).map(|a| a.to_string()).collect();
        Ok(Self::assemble(cayley, inverse, 0, labels, Some((GroupKind::Cyclic, n as u64))))
    }

    /// Dihedral group of order 2n: r^a s^b with r^n = s^2 = e, s r s = r^{-1}.
    /// `(a, b)` is numbered `a + n*b`.
    pub fn dihedral(n: u64) -> Result<FiniteGroup> {
        if n < 1 {
            return Err(Error::InvalidGroup("dihedral requires param >= 1".into()));
        }
        let n = n as usize;
        let order = 2 * n;
        let idx = |a: usize, b: usize| a + n * b;
        let mut cayley = vec![vec![0usize; order]; order];
        for a1 in 0..n {
            for b1 in 0..2 {
                for a2 in 0..n {
                    for b2 in 0..2 {
                        // r^{a1} s^{b1} r^{a2} s^{b2} = r^{a1 + (-1)^{b1} a2} s^{b1+b2}
                        let a = if b1 == 0 { (a1 + a2) % n } else { (a1 + n - a2 % n) % n };
                        cayley[idx(a1, b1)][idx(a2, b2)] = idx(a, (b1 + b2) % 2);
                    }
                }
            }
        }
        let inverse = Self::inverses_from_table(&cayley, 0);
        let labels = (0..order)
            .map(|e| {
                let (a, b) = (e % n, e / n);
                if b == 0 {
                    format!("r^{a}")
                } else {
                    format!("r^{a}s")
                }
            })
            .collect();
        Ok(Self::assemble(cayley, inverse, 0, labels, Some((GroupKind::Dihedral, n as u64))))
    }

    /// Affine group Z_p x Z_p^* of order p(p-1) with
    /// (k,l)(k',l') = (k + l k' mod p, l l' mod p); `(k,l)` is numbered `(l-1)p + k`.
    pub fn affine(p: u64) -> Result<FiniteGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = p as usize;
        let order = p * (p - 1);
        let idx = |k: usize, l: usize| (l - 1) * p + k;
        let mut cayley = vec![vec![0usize; order]; order];
        for l1 in 1..p {
            for k1 in 0..p {
                for l2 in 1..p {
                    for k2 in 0..p {
                        cayley[idx(k1, l1)][idx(k2, l2)] = idx((k1 + l1 * k2) % p, (l1 * l2) % p);
                    }
                }
            }
        }
        let inverse = Self::inverses_from_table(&cayley, 0);
        let labels = (0..order)
            .map(|e| format!("({},{})", e % p, e / p + 1))
            .collect();
        Ok(Self::assemble(cayley, inverse, 0, labels, Some((GroupKind::Affine, p as u64))))
    }

    /// Build a group from an explicit Cayley table, validating the axioms that
    /// are checkable in O(order^2): latin-square rows/columns, a two-sided
    /// identity and inverses. Associativity is checked separately by
    /// [`FiniteGroup::verify_associativity`].
    pub fn from_cayley(cayley: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<FiniteGroup> {
        let order = cayley.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty Cayley table".into()));
        }
        for (a, row) in cayley.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!("row {a} has length {}", row.len())));
            }
            let mut seen = vec![false; order];
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range in row {a}")));
                }
                if seen[v] {
                    return Err(Error::InvalidGroup(format!("row {a} is not a permutation")));
                }
                seen[v] = true;
            }
        }
        for b in 0..order {
            let mut seen = vec![false; order];
            for row in &cayley {
                if seen[row[b]] {
                    return Err(Error::InvalidGroup(format!("column {b} is not a permutation")));
                }
                seen[row[b]] = true;
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| cayley[e][a] == a && cayley[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let inverse = Self::inverses_from_table(&cayley, identity);
        for a in 0..order {
            if cayley[a][inverse[a]] != identity || cayley[inverse[a]][a] != identity {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|e| format!("g{e}")).collect());
        if labels.len() != order {
            return Err(Error::InvalidGroup("label count mismatch".into()));
        }
        Ok(Self::assemble(cayley, inverse, identity, labels, None))
    }

    fn inverses_from_table(cayley: &[Vec<usize>], identity: usize) -> Vec<usize> {
        cayley
            .iter()
            .map(|row| row.iter().position(|&v| v == identity).unwrap_or(0))
            .collect()
    }

    fn assemble(
        cayley: Vec<Vec<usize>>,
        inverse: Vec<usize>,
        identity: usize,
        labels: Vec<String>,
        kind: Option<(GroupKind, u64)>,
    ) -> FiniteGroup {
        let order = cayley.len();
        FiniteGroup {
            data: Arc::new(GroupData {
                order,
                cayley,
                inverse,
                identity,
                labels,
                kind,
            }),
        }
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn identity(&self) -> usize {
        self.data.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.cayley[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.data.inverse[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.data.labels[a]
    }

    pub fn kind(&self) -> Option<(GroupKind, u64)> {
        self.data.kind
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.data.order
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive associativity check, O(order^3). Kept out of construction so
    /// building stays O(order^2); run it from verification suites.
    pub fn verify_associativity(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvariantViolation(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Smallest subgroup containing `gens` (closure under products).
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order()];
        in_set[self.identity()] = true;
        let mut frontier: Vec<usize> = vec![self.identity()];
        for &g in gens {
            if !in_set[g] {
                in_set[g] = true;
                frontier.push(g);
            }
        }
        while let Some(x) = frontier.pop() {
            for &g in gens {
                for y in [self.mul(x, g), self.mul(g, x), self.inv(x)] {
                    if !in_set[y] {
                        in_set[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        (0..self.order()).filter(|&e| in_set[e]).collect()
    }

    /// Partition into right cosets Hg of the subgroup with elements `subgroup`.
    pub fn coset_partition(&self, subgroup: &[usize]) -> Result<CosetPartition> {
        CosetPartition::new(self.clone(), subgroup)
    }

    /// Decode an affine element index to its (k, l) pair.
    pub fn affine_coords(&self, element: usize) -> Result<(usize, usize)> {
        match self.kind() {
            Some((GroupKind::Affine, p)) => {
                let p = p as usize;
                Ok((element % p, element / p + 1))
            }
            _ => Err(Error::InvalidArgument(format!(
                "affine_coords called on non-affine group {self}"
            ))),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Right-coset partition of a group by a subgroup, with normality computed
/// exhaustively.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    group: FiniteGroup,
    subgroup: Vec<usize>,
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    is_normal: bool,
}

impl CosetPartition {
    fn new(group: FiniteGroup, subgroup: &[usize]) -> Result<CosetPartition> {
        let order = group.order();
        let mut h: Vec<usize> = subgroup.to_vec();
        h.sort_unstable();
        h.dedup();
        if h.iter().any(|&x| x >= order) {
            return Err(Error::NotASubgroup("element index out of range".into()));
        }
        if h.is_empty() || !h.contains(&group.identity()) {
            return Err(Error::NotASubgroup(format!(
                "missing identity element {}",
                group.identity()
            )));
        }
        let in_h = {
            let mut v = vec![false; order];
            for &x in &h {
                v[x] = true;
            }
            v
        };
        for &a in &h {
            if !in_h[group.inv(a)] {
                return Err(Error::NotASubgroup(format!(
                    "not closed under inverses: {}^-1 missing",
                    group.label(a)
                )));
            }
            for &b in &h {
                if !in_h[group.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!(
                        "not closed under the operation: {}*{} missing",
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }

        // Right cosets Hg, enumerated in order of their smallest member.
        let mut coset_of = vec![usize::MAX; order];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for g in 0..order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = cosets.len();
            let mut coset: Vec<usize> = h.iter().map(|&x| group.mul(x, g)).collect();
            coset.sort_unstable();
            for &e in &coset {
                coset_of[e] = id;
            }
            cosets.push(coset);
        }

        // Normality: g H g^{-1} = H for every g.
        let is_normal = (0..order).all(|g| {
            h.iter()
                .all(|&x| in_h[group.mul(group.mul(g, x), group.inv(g))])
        });

        Ok(CosetPartition {
            group,
            subgroup: h,
            cosets,
            coset_of,
            is_normal,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn num_cosets(&self) -> usize {
        self.cosets.len()
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element]
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    /// Coset id of (coset `v`) * g, i.e. the right action on cosets.
    pub fn coset_mul(&self, v: usize, g: usize) -> usize {
        self.coset_of[self.group.mul(self.cosets[v][0], g)]
    }

    /// The subgroup as a standalone group (reindexed 0..|H| in sorted order),
    /// together with the embedding back into the parent's element indices.
    pub fn subgroup_as_group(&self) -> Result<(FiniteGroup, Vec<usize>)> {
        let embed = self.subgroup.clone();
        let pos: std::collections::HashMap<usize, usize> =
            embed.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let cayley: Vec<Vec<usize>> = embed
            .iter()
            .map(|&a| embed.iter().map(|&b| pos[&self.group.mul(a, b)]).collect())
            .collect();
        let labels = embed.iter().map(|&e| self.group.label(e).to_string()).collect();
        let sub = FiniteGroup::from_cayley(cayley, Some(labels))?;
        Ok((sub, embed))
    }

    /// Default cross-section: smallest element index of each coset.
    pub fn min_cross_section(&self) -> CrossSection {
        CrossSection {
            representatives: self.cosets.iter().map(|c| c[0]).collect(),
        }
    }

    /// Cross-section from explicit representatives, one per coset.
    pub fn cross_section(&self, representatives: Vec<usize>) -> Result<CrossSection> {
        if representatives.len() != self.num_cosets() {
            return Err(Error::InvalidArgument(format!(
                "need {} representatives, got {}",
                self.num_cosets(),
                representatives.len()
            )));
        }
        for (v, &r) in representatives.iter().enumerate() {
            if r >= self.group.order() || self.coset_of[r] != v {
                return Err(Error::InvalidArgument(format!(
                    "representative {r} does not lie in coset {v}"
                )));
            }
        }
        Ok(CrossSection { representatives })
    }
}

/// A choice of one representative per right coset.
#[derive(Debug, Clone)]
pub struct CrossSection {
    representatives: Vec<usize>,
}

impl CrossSection {
    pub fn representative(&self, coset: usize) -> usize {
        self.representatives[coset]
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// True iff no two distinct elements of `omega` lie in the same coset.
pub fn is_coset_admissible(omega: &[usize], partition: &CosetPartition) -> bool {
    let mut used = vec![false; partition.num_cosets()];
    for &g in omega {
        let c = partition.coset_of(g);
        if used[c] {
            return false;
        }
        used[c] = true;
    }
    true
}

/// Number of admissible sampling sets, (1 + |H|)^{#cosets}.
pub fn count_admissible_sets(partition: &CosetPartition) -> Result<u128> {
    let base = partition.subgroup().len() as u128 + 1;
    let mut acc: u128 = 1;
    for _ in 0..partition.num_cosets() {
        acc = acc
            .checked_mul(base)
            .ok_or_else(|| Error::BudgetExceeded("admissible-set count overflows u128".into()))?;
    }
    Ok(acc)
}
