//! Finite groups as permutation groups with full element enumeration.
//!
//! Products compose right-to-left: `(g*h)(x) = g(h(x))`, which keeps left
//! actions and left cosets natural throughout.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default limit on the number of elements enumerated by [`Group::close`].
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

/// A permutation of `{0, .., n-1}` stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Perm(images))
    }

    /// Parse cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn from_cycles(degree: usize, s: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::InvalidPermutation(format!("expected '(' in {s:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::InvalidPermutation(format!("unclosed cycle in {s:?}")));
            };
            let pts: Vec<u32> = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::InvalidPermutation(format!("bad point {t:?} in {s:?}")))
                })
                .collect::<Result<_>>()?;
            for (k, &a) in pts.iter().enumerate() {
                if a as usize >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {a} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut seen[a as usize], true) {
                    return Err(Error::InvalidPermutation(format!("point {a} repeated in {s:?}")));
                }
                images[a as usize] = pts[(k + 1) % pts.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Sign parity: true for odd permutations.
    pub fn is_odd(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for s in 0..self.0.len() {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 1
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.0.len()];
        let mut l = 1u64;
        for s in 0..self.0.len() {
            let mut len = 0u64;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                l = lcm(l, len);
            }
        }
        l
    }

    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for s in 0..self.0.len() {
            if seen[s] || self.0[s] as usize == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x.to_string());
                x = self.0[x] as usize;
            }
            out.push_str(&format!("({})", cyc.join(" ")));
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A finite permutation group with every element enumerated.
///
/// Elements are listed in breadth-first order from the identity, expanding
/// by left multiplication with the generators in their given order; each
/// element records the generator word that produced it.
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// For each non-identity element: (generator index, parent element) with
    /// element = generator * parent.
    parent: Vec<Option<(usize, usize)>>,
    inverse: Vec<usize>,
    table: OnceLock<Vec<u32>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, gens {:?})", self.order(), self.generators)
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl Eq for Group {}

impl Group {
    pub fn close(degree: usize, generators: Vec<Perm>) -> Result<Group> {
        Group::close_with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn close_with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Group> {
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {bad:?} has degree {}, expected {degree}",
                bad.degree()
            )));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![None];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, g) in generators.iter().enumerate() {
                let y = g.compose(&elements[x]);
                if index.contains_key(&y) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
                parent.push(Some((gi, x)));
                queue.push_back(elements.len() - 1);
            }
        }
        let inverse = elements.iter().map(|e| index[&e.inverse()]).collect();
        Ok(Group {
            degree,
            generators,
            elements,
            index,
            parent,
            inverse,
            table: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Group {
        Group::close(degree, Vec::new()).expect("trivial group")
    }

    /// Parse generators in cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Group> {
        let gens = gens
            .iter()
            .map(|s| Perm::from_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        Group::close(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn generator_index(&self, gi: usize) -> usize {
        self.index[&self.generators[gi]]
    }

    /// (generator, parent) with element = generator * parent; `None` for the
    /// identity.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    /// Generator word evaluating to element `i`, leftmost factor first.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut x = i;
        while let Some((g, p)) = self.parent[x] {
            w.push(g);
            x = p;
        }
        w
    }

    pub fn evaluate_word(&self, word: &[usize]) -> Perm {
        word.iter()
            .rev()
            .fold(Perm::identity(self.degree), |acc, &g| self.generators[g].compose(&acc))
    }

    /// Index of the product `elements[a] * elements[b]`.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let n = self.order();
        if n <= 2048 {
            let table = self.table.get_or_init(|| {
                let mut t = vec![0u32; n * n];
                for i in 0..n {
                    for j in 0..n {
                        t[i * n + j] = self.index[&self.elements[i].compose(&self.elements[j])] as u32;
                    }
                }
                t
            });
            table[a * n + b] as usize
        } else {
            self.index[&self.elements[a].compose(&self.elements[b])]
        }
    }

    /// Index of `x * g * x^-1`.
    pub fn conj_index(&self, x: usize, g: usize) -> usize {
        self.mul_index(self.mul_index(x, g), self.inverse[x])
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.elements.iter().fold(1, |acc, e| lcm(acc, e.order()))
    }

    /// Whether every element of `small` lies in this group.
    pub fn has_subgroup(&self, small: &Group) -> bool {
        small.degree == self.degree && small.elements.iter().all(|e| self.contains(e))
    }

    /// Whether `x^-1 G x = G`, where `x` is any permutation of the same degree.
    pub fn is_normalized_by(&self, x: &Perm) -> bool {
        let xi = x.inverse();
        self.generators.iter().all(|g| self.contains(&xi.compose(g).compose(x)))
    }

    /// The subgroup generated by the given elements (closure in this group's
    /// degree).
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<Group> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::NotSubgroup(format!("{g:?} is not an element")));
        }
        Group::close(self.degree, gens)
    }

    /// Conjugacy classes as element-index sets, ordered by (size, least
    /// element index).
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                for gi in 0..self.generators.len() {
                    let g = self.generator_index(gi);
                    let y = self.conj_index(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out.sort_by_key(|c| (c.len(), c[0]));
        out
    }
}

/// Left-coset representatives of a subgroup, identity first.
#[derive(Clone, Debug)]
pub struct Transversal {
    reps: Vec<Perm>,
    normal: bool,
    big_order: usize,
    small_generators: Vec<Perm>,
    /// For each element of the big group: (coset index, element h of the
    /// subgroup, as its index there) with element = reps[coset] * h.
    decomposition: Vec<(usize, usize)>,
}

impl Transversal {
    /// Left transversal of `small` in `big`; representatives after the
    /// identity follow `big`'s element order.
    pub fn new(big: &Group, small: &Group) -> Result<Transversal> {
        if !big.has_subgroup(small) {
            return Err(Error::NotSubgroup("small group is not contained in big group".into()));
        }
        let mut coset_of = vec![usize::MAX; big.order()];
        let mut decomposition = vec![(0, 0); big.order()];
        let mut reps = Vec::new();
        for i in 0..big.order() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let t = big.element(i).clone();
            let c = reps.len();
            for (hi, h) in small.elements().iter().enumerate() {
                let x = big.index_of(&t.compose(h)).expect("closed");
                coset_of[x] = c;
                decomposition[x] = (c, hi);
            }
            reps.push(t);
        }
        let normal = big.generators().iter().all(|g| small.is_normalized_by(&g.inverse()));
        Ok(Transversal {
            reps,
            normal,
            big_order: big.order(),
            small_generators: small.generators().to_vec(),
            decomposition,
        })
    }

    /// A transversal with caller-chosen representatives (validated).
    pub fn with_reps(big: &Group, small: &Group, reps: Vec<Perm>) -> Result<Transversal> {
        if !big.has_subgroup(small) {
            return Err(Error::NotSubgroup("small group is not contained in big group".into()));
        }
        if big.order() != reps.len() * small.order() {
            return Err(Error::NotSubgroup("wrong number of coset representatives".into()));
        }
        let mut decomposition = vec![(usize::MAX, 0); big.order()];
        for (c, t) in reps.iter().enumerate() {
            for (hi, h) in small.elements().iter().enumerate() {
                let x = big
                    .index_of(&t.compose(h))
                    .ok_or_else(|| Error::NotSubgroup("representative outside big group".into()))?;
                if decomposition[x].0 != usize::MAX {
                    return Err(Error::NotSubgroup("two representatives share a coset".into()));
                }
                decomposition[x] = (c, hi);
            }
        }
        let normal = big.generators().iter().all(|g| small.is_normalized_by(&g.inverse()));
        Ok(Transversal {
            reps,
            normal,
            big_order: big.order(),
            small_generators: small.generators().to_vec(),
            decomposition,
        })
    }

    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Whether the subgroup is normal in the big group.
    pub fn is_normal(&self) -> bool {
        self.normal
    }

    /// Whether this transversal was built for exactly these two groups.
    pub fn matches(&self, big: &Group, small: &Group) -> bool {
        self.big_order == big.order()
            && self.small_generators == small.generators()
            && self.reps.len() * small.order() == big.order()
            && self.reps.iter().all(|r| big.contains(r))
    }

    /// For big-group element `x`: `(j, h)` with `x = reps[j] * small[h]`.
    pub fn split(&self, x: usize) -> (usize, usize) {
        self.decomposition[x]
    }
}

/// Standard small groups used throughout the tests and built-in scenarios.
pub mod standard {
    use super::*;

    pub fn alternating4() -> Group {
        Group::from_cycle_strings(4, &["(0 1 2)", "(0 1)(2 3)"]).expect("A4")
    }

    pub fn symmetric4() -> Group {
        Group::from_cycle_strings(4, &["(0 1)", "(0 1 2 3)"]).expect("S4")
    }

    /// C3 = <(0 1 2)> acting on three points.
    pub fn cyclic3() -> Group {
        Group::from_cycle_strings(3, &["(0 1 2)"]).expect("C3")
    }

    pub fn symmetric3() -> Group {
        Group::from_cycle_strings(3, &["(0 1 2)", "(0 1)"]).expect("S3")
    }
}
