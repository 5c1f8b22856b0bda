//! Explicit finite groups stored as full Cayley tables, and verified
//! homomorphisms between them.
//!
//! Elements are dense ids `0..order` and id `0` is always the identity.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element id inside a [`FiniteGroup`].
pub type Elem = usize;

/// Largest order accepted for a Cayley table.
pub const MAX_ORDER: usize = 512;

/// A finite group given by its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a row-major Cayley table and builds the group.
    ///
    /// The identity may sit at any index of the input; elements are
    /// relabelled so that it becomes id 0. Validation errors name the
    /// failing element or triple using the caller's original indices.
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        table: &[usize],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::GroupValidation("order must be positive".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::GroupValidation(format!(
                "order {order} exceeds the maximum of {MAX_ORDER}"
            )));
        }
        if table.len() != order * order {
            return Err(Error::GroupValidation(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::GroupValidation(format!(
                    "{} labels given for order {order}",
                    l.len()
                )));
            }
        }
        if let Some(pos) = table.iter().position(|&x| x >= order) {
            return Err(Error::GroupValidation(format!(
                "not closed: product ({}, {}) = {} is out of range",
                pos / order,
                pos % order,
                table[pos]
            )));
        }
        let m = |a: usize, b: usize| table[a * order + b];

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or_else(|| Error::GroupValidation("no two-sided identity".into()))?;

        for a in 0..order {
            for b in 0..order {
                let ab = m(a, b);
                for c in 0..order {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::GroupValidation(format!(
                            "not associative at triple ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }

        let mut old_inv = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| m(h, g) == identity) {
                Some(h) => old_inv[g] = h,
                None => {
                    return Err(Error::GroupValidation(format!("element {g} has no inverse")))
                }
            }
        }

        // Swap the identity into slot 0.
        let to_new = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut new_table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                new_table[to_new(a) * order + to_new(b)] = to_new(m(a, b));
            }
        }
        let mut inverses = vec![0; order];
        for g in 0..order {
            inverses[to_new(g)] = to_new(old_inv[g]);
        }
        let mut labels = labels.unwrap_or_else(|| (0..order).map(|i| i.to_string()).collect());
        labels.swap(0, identity);

        Ok(Self {
            label: label.into(),
            order,
            table: new_table,
            inverses,
            labels,
        })
    }

    /// Builds a group from an explicit list of concrete elements whose first
    /// entry is the identity.
    pub fn from_elements<T, M, F>(label: impl Into<String>, elements: &[T], mul: M, fmt: F) -> Result<Self>
    where
        T: Eq + Hash,
        M: Fn(&T, &T) -> T,
        F: Fn(&T) -> String,
    {
        let order = elements.len();
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        if index.len() != order {
            return Err(Error::GroupValidation("duplicate elements".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in elements {
            for b in elements {
                let p = mul(a, b);
                match index.get(&p) {
                    Some(&i) => table.push(i),
                    None => {
                        return Err(Error::GroupValidation(format!(
                            "not closed: {} * {} leaves the element set",
                            fmt(a),
                            fmt(b)
                        )))
                    }
                }
            }
        }
        let labels = elements.iter().map(&fmt).collect();
        let g = Self::from_table(label, order, &table, Some(labels))?;
        if g.labels[0] != fmt(&elements[0]) {
            return Err(Error::GroupValidation("first element is not the identity".into()));
        }
        Ok(g)
    }

    /// Closure of a set of permutations of `0..degree` under composition,
    /// `(p * q)(x) = p(q(x))`. Elements are sorted lexicographically, so the
    /// identity comes first.
    pub fn from_permutations(label: impl Into<String>, generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::GroupValidation(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut known: std::collections::HashSet<Vec<usize>> = elements.iter().cloned().collect();
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q = compose(g, &p);
                if known.insert(q.clone()) {
                    if known.len() > MAX_ORDER {
                        return Err(Error::GroupValidation(format!(
                            "generated group exceeds order {MAX_ORDER}"
                        )));
                    }
                    elements.push(q.clone());
                    frontier.push(q);
                }
            }
        }
        elements.sort();
        Self::from_elements(label, &elements, |a, b| compose(a, b), |p| format!("{p:?}"))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// `Ad_a(g) = a g a^{-1}`.
    #[inline]
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(a, g), self.inv(a))
    }

    pub fn element_label(&self, g: Elem) -> &str {
        &self.labels[g]
    }

    /// Product `g_1 g_2 ... g_k` (identity for the empty slice).
    pub fn product(&self, gs: &[Elem]) -> Elem {
        gs.iter().fold(0, |acc, &g| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, z: Elem) -> bool {
        self.elements().all(|g| self.mul(z, g) == self.mul(g, z))
    }

    /// Renames the group without touching its table.
    pub fn relabeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The row-major Cayley table.
    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// Exhaustive re-check of the group axioms on the stored table.
    pub fn check_axioms(&self) -> Result<()> {
        Self::from_table(self.label.clone(), self.order, &self.table, None).map(|_| ())
    }
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

/// A verified group homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<Elem>,
    surjective: bool,
}

impl GroupHom {
    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: Elem) -> Elem {
        self.map[g]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn kernel(&self) -> Vec<Elem> {
        self.source.elements().filter(|&g| self.map[g] == 0).collect()
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = group.elements().collect();
        Self {
            source: group.clone(),
            target: group,
            map,
            surjective: true,
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if *self.target != *other.source {
            return Err(Error::InvalidMap("composition of non-matching homomorphisms".into()));
        }
        verify_homomorphism(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&g| other.map[g]).collect(),
        )
    }
}

/// Checks `map(g h) = map(g) map(h)` on all pairs and computes surjectivity.
pub fn verify_homomorphism(
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<Elem>,
) -> Result<GroupHom> {
    if map.len() != source.order() {
        return Err(Error::InvalidMap(format!(
            "map has {} entries but the source has order {}",
            map.len(),
            source.order()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&x| x >= target.order()) {
        return Err(Error::InvalidMap(format!("image {bad} is not an element of the target")));
    }
    for g in source.elements() {
        for h in source.elements() {
            if map[source.mul(g, h)] != target.mul(map[g], map[h]) {
                return Err(Error::NotHomomorphism(g, h));
            }
        }
    }
    let mut hit = vec![false; target.order()];
    for &x in &map {
        hit[x] = true;
    }
    let surjective = hit.iter().all(|&b| b);
    Ok(GroupHom {
        source,
        target,
        map,
        surjective,
    })
}

/// Group input accepted by fixtures and the CLI: a built-in name, a Cayley
/// table, or a list of permutation generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table {
        order: usize,
        table: Vec<usize>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
    Permutations {
        permutations: Vec<Vec<usize>>,
        #[serde(default)]
        label: Option<String>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Name(name) => construct_group(name),
            GroupSpec::Table { order, table, labels } => {
                FiniteGroup::from_table("custom", *order, table, labels.clone())
            }
            GroupSpec::Permutations { permutations, label } => FiniteGroup::from_permutations(
                label.clone().unwrap_or_else(|| "custom".into()),
                permutations,
            ),
        }
    }
}

/// Builds a group from a built-in name: `Z/n` (n ≤ 64), `V4`, `D4`, `Q8`,
/// `S4`, `GL2F3`, or a direct product such as `Z/2 x S4`.
pub fn construct_group(name: &str) -> Result<FiniteGroup> {
    let factors: Vec<&str> = name
        .split(['x', '×'])
        .map(str::trim)
        .collect();
    if factors.len() > 1 {
        let mut acc = construct_group(factors[0])?;
        for f in &factors[1..] {
            acc = builtin::direct_product(&acc, &construct_group(f)?)?;
        }
        return Ok(acc.relabeled(factors.join(" x ")));
    }
    let name = factors[0];
    match name {
        "V4" => Ok(builtin::klein_four()),
        "D4" => Ok(builtin::dihedral_d4()),
        "Q8" => Ok(builtin::quaternion()),
        "S4" => Ok(builtin::symmetric_s4()),
        "GL2F3" => Ok(builtin::gl2f3()),
        _ => {
            let n = name
                .strip_prefix("Z/")
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
            if n == 0 || n > 64 {
                return Err(Error::UnknownGroup(name.to_string()));
            }
            Ok(builtin::cyclic(n))
        }
    }
}

/// Concrete constructions of the built-in groups and the maps between them.
pub mod builtin {
    use super::*;

    /// 2×2 matrix over F3, row-major `[a, b, c, d]`.
    pub type Mat3 = [u8; 4];

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table: Vec<usize> = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteGroup::from_table(format!("Z/{n}"), n, &table, None).expect("cyclic group is valid")
    }

    /// Direct product with ids `i * |H| + j`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
        let (m, n) = (g.order(), h.order());
        let order = m * n;
        if order > MAX_ORDER {
            return Err(Error::GroupValidation(format!("product order {order} exceeds {MAX_ORDER}")));
        }
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(g.mul(a / n, b / n) * n + h.mul(a % n, b % n));
            }
        }
        let labels = (0..order)
            .map(|i| format!("({}, {})", g.element_label(i / n), h.element_label(i % n)))
            .collect();
        FiniteGroup::from_table(format!("{} x {}", g.label(), h.label()), order, &table, Some(labels))
    }

    pub fn klein_four() -> FiniteGroup {
        direct_product(&cyclic(2), &cyclic(2))
            .expect("V4 is valid")
            .relabeled("V4")
    }

    /// Concrete D4 elements as `(a, b)` standing for `r^a s^b`.
    pub fn d4_elements() -> Vec<(u8, u8)> {
        let mut v: Vec<(u8, u8)> = (0..4).flat_map(|a| (0..2).map(move |b| (a, b))).collect();
        v.sort_by_key(|&(a, b)| (b, a));
        v
    }

    pub fn d4_mul(x: &(u8, u8), y: &(u8, u8)) -> (u8, u8) {
        let a = if x.1 == 0 { x.0 + y.0 } else { x.0 + 4 - y.0 };
        (a % 4, (x.1 + y.1) % 2)
    }

    pub fn dihedral_d4() -> FiniteGroup {
        FiniteGroup::from_elements("D4", &d4_elements(), d4_mul, |&(a, b)| match (a, b) {
            (0, 0) => "e".to_string(),
            (a, 0) => format!("r^{a}"),
            (0, _) => "s".to_string(),
            (a, _) => format!("r^{a}s"),
        })
        .expect("D4 is valid")
    }

    /// Quaternion units as `(sign, unit)` with unit 0..4 = 1, i, j, k.
    pub fn q8_elements() -> Vec<(bool, u8)> {
        let mut v = Vec::new();
        for neg in [false, true] {
            for u in 0..4 {
                v.push((neg, u));
            }
        }
        v
    }

    pub fn q8_mul(x: &(bool, u8), y: &(bool, u8)) -> (bool, u8) {
        // Unit products: i j = k, j k = i, k i = j, squares = -1.
        let (neg, unit) = match (x.1, y.1) {
            (0, u) | (u, 0) => (false, u),
            (a, b) if a == b => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        };
        (x.0 ^ y.0 ^ neg, unit)
    }

    pub fn quaternion() -> FiniteGroup {
        FiniteGroup::from_elements("Q8", &q8_elements(), q8_mul, |&(neg, u)| {
            format!("{}{}", if neg { "-" } else { "" }, ["1", "i", "j", "k"][u as usize])
        })
        .expect("Q8 is valid")
    }

    /// All permutations of `0..4`, lexicographic.
    pub fn s4_elements() -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = vec![a, b, c, d];
                        let mut s = p.clone();
                        s.sort();
                        s.dedup();
                        if s.len() == 4 {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn symmetric_s4() -> FiniteGroup {
        FiniteGroup::from_elements("S4", &s4_elements(), |p, q| compose(p, q), |p| format!("{p:?}"))
            .expect("S4 is valid")
    }

    pub fn mat3_mul(x: &Mat3, y: &Mat3) -> Mat3 {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    }

    pub fn mat3_det(x: &Mat3) -> u8 {
        ((x[0] * x[3]) % 3 + 3 - (x[1] * x[2]) % 3) % 3
    }

    /// Invertible matrices over F3: the identity first, then the rest in
    /// lexicographic order of their entries.
    pub fn gl2f3_elements() -> Vec<Mat3> {
        let id: Mat3 = [1, 0, 0, 1];
        let mut v = vec![id];
        for code in 0..81u8 {
            let m = [code / 27, (code / 9) % 3, (code / 3) % 3, code % 3];
            if mat3_det(&m) != 0 && m != id {
                v.push(m);
            }
        }
        v
    }

    pub fn gl2f3() -> FiniteGroup {
        FiniteGroup::from_elements("GL2F3", &gl2f3_elements(), mat3_mul, |m| {
            format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3])
        })
        .expect("GL2F3 is valid")
    }

    /// The four lines of F3², by a spanning vector.
    const LINES: [[u8; 2]; 4] = [[1, 0], [0, 1], [1, 1], [1, 2]];

    fn line_index(v: [u8; 2]) -> usize {
        // Normalise so the first nonzero coordinate is 1.
        let scale = if v[0] != 0 { v[0] } else { v[1] };
        let inv = if scale == 1 { 1 } else { 2 };
        let w = [(v[0] * inv) % 3, (v[1] * inv) % 3];
        LINES.iter().position(|&l| l == w).expect("nonzero vector spans a line")
    }

    /// Permutation of the four lines induced by `v ↦ m v`.
    pub fn line_permutation(m: &Mat3) -> Vec<usize> {
        LINES
            .iter()
            .map(|l| line_index([(m[0] * l[0] + m[1] * l[1]) % 3, (m[2] * l[0] + m[3] * l[1]) % 3]))
            .collect()
    }

    fn index_of<T: PartialEq>(elems: &[T], x: &T) -> usize {
        elems.iter().position(|e| e == x).expect("element present")
    }

    /// GL2F3 → S4 through the action on lines; kernel is `{±I}`.
    pub fn gl2f3_to_s4() -> GroupHom {
        let gl = Arc::new(gl2f3());
        let s4 = Arc::new(symmetric_s4());
        let perms = s4_elements();
        let map = gl2f3_elements()
            .iter()
            .map(|m| index_of(&perms, &line_permutation(m)))
            .collect();
        verify_homomorphism(gl, s4, map).expect("line action is a homomorphism")
    }

    /// Determinant GL2F3 → Z/2 (det 1 ↦ 0, det 2 ↦ 1).
    pub fn gl2f3_determinant() -> GroupHom {
        let map = gl2f3_elements().iter().map(|m| (mat3_det(m) == 2) as usize).collect();
        verify_homomorphism(Arc::new(gl2f3()), Arc::new(cyclic(2)), map).expect("det is a homomorphism")
    }

    /// Sign character S4 → Z/2.
    pub fn s4_sign() -> GroupHom {
        let map = s4_elements()
            .iter()
            .map(|p| {
                let inversions = (0..4)
                    .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                inversions % 2
            })
            .collect();
        verify_homomorphism(Arc::new(symmetric_s4()), Arc::new(cyclic(2)), map).expect("sign is a homomorphism")
    }

    /// Reduction Z/m → Z/n for n | m.
    pub fn cyclic_reduction(m: usize, n: usize) -> Result<GroupHom> {
        if n == 0 || m % n != 0 {
            return Err(Error::InvalidMap(format!("Z/{m} does not surject onto Z/{n}")));
        }
        verify_homomorphism(Arc::new(cyclic(m)), Arc::new(cyclic(n)), (0..m).map(|x| x % n).collect())
    }

    /// Q8 → V4, `±u ↦ u` with 1, i, j, k ↦ (0,0), (1,0), (0,1), (1,1).
    pub fn q8_to_v4() -> GroupHom {
        let map = q8_elements()
            .iter()
            .map(|&(_, u)| [0, 2, 1, 3][u as usize])
            .collect();
        verify_homomorphism(Arc::new(quaternion()), Arc::new(klein_four()), map).expect("Q8 → V4")
    }

    /// D4 → V4, `r^a s^b ↦ (a mod 2, b)`; kernel is the centre `{e, r²}`.
    pub fn d4_to_v4() -> GroupHom {
        let map = d4_elements()
            .iter()
            .map(|&(a, b)| (a as usize % 2) * 2 + b as usize)
            .collect();
        verify_homomorphism(Arc::new(dihedral_d4()), Arc::new(klein_four()), map).expect("D4 → V4")
    }

    /// V4 → Z/2 projecting onto the first factor.
    pub fn v4_first_factor() -> GroupHom {
        verify_homomorphism(Arc::new(klein_four()), Arc::new(cyclic(2)), vec![0, 0, 1, 1])
            .expect("projection")
    }

    /// A homomorphism G → Z/2 used to define a sign action, or `None` for
    /// groups of odd order or unknown presentation.
    pub fn sign_character(group: &FiniteGroup) -> Option<Vec<usize>> {
        let ch = match group.label() {
            "S4" => s4_sign().map().to_vec(),
            "GL2F3" => gl2f3_determinant().map().to_vec(),
            "D4" => d4_elements().iter().map(|&(_, b)| b as usize).collect(),
            "Q8" => q8_to_v4().map().iter().map(|&v| v / 2).collect(),
            "V4" => vec![0, 0, 1, 1],
            l if l.starts_with("Z/") => {
                let n = group.order();
                if n % 2 != 0 {
                    return None;
                }
                (0..n).map(|x| x % 2).collect()
            }
            _ => return None,
        };
        Some(ch)
    }
}
