//! Small finite groups with concrete, densely indexed elements.
//!
//! Three families are supported: cyclic groups `Z/nZ`, direct products of
//! groups, and the special linear groups `SL_n(F_p)` over prime fields. Every
//! group assigns its elements the ids `0..order`, so graphs built on a group
//! can use the ids directly as vertex indices.
//!
//! Element ids are canonical:
//! - cyclic: the residue itself, identity `0`;
//! - product: row-major over the factors (last factor varies fastest);
//! - `SL_n(F_p)`: rank of the matrix among all determinant-one matrices when
//!   sorted lexicographically by row-major entries in `[0, p)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::split_top_level;

/// Default element-count cap for group construction.
pub const DEFAULT_CAPACITY: usize = 1_000_000;

/// Environment variable overriding every element-count cap.
pub const CAPACITY_ENV: &str = "RIGIDCAY_CAPACITY";

/// Groups up to this order get a full multiplication table on first use.
pub const TABLE_CAP: usize = 2048;

/// Upper bound on the number of elements a constructor may create.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Capacity(pub usize);

impl Capacity {
    /// `RIGIDCAY_CAPACITY` if it is set to a positive integer, `default` otherwise.
    pub fn from_env_or(default: usize) -> Self {
        let value = std::env::var(CAPACITY_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(default);
        Capacity(value)
    }

    fn check(self, what: impl fmt::Display, needed: u128) -> Result<usize> {
        if needed > self.0 as u128 {
            return Err(Error::capacity(what.to_string(), needed, self.0));
        }
        Ok(needed as usize)
    }
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity::from_env_or(DEFAULT_CAPACITY)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub usize);

impl GroupElement {
    pub fn id(self) -> usize {
        self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Structured group name, serialized as `cyclic:6`, `product:(cyclic:4,cyclic:3)`
/// or `sl:2:3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupDescriptor {
    Cyclic(usize),
    Product(Vec<GroupDescriptor>),
    SpecialLinear { n: usize, p: u32 },
}

impl GroupDescriptor {
    pub fn build(&self, capacity: Capacity) -> Result<FiniteGroup> {
        match self {
            GroupDescriptor::Cyclic(n) => make_cyclic_capped(*n, capacity),
            GroupDescriptor::SpecialLinear { n, p } => make_sl_capped(*n, *p, capacity),
            GroupDescriptor::Product(parts) => {
                let factors = parts
                    .iter()
                    .map(|d| d.build(capacity))
                    .collect::<Result<Vec<_>>>()?;
                direct_product_of(factors, capacity)
            }
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupDescriptor::SpecialLinear { n, p } => write!(f, "sl:{n}:{p}"),
            GroupDescriptor::Product(parts) => {
                f.write_str("product:(")?;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{part}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed group descriptor `{s}`"));
        if let Some(rest) = s.strip_prefix("cyclic:") {
            let n = rest.trim().parse().map_err(|_| bad())?;
            Ok(GroupDescriptor::Cyclic(n))
        } else if let Some(rest) = s.strip_prefix("sl:") {
            let (n, p) = rest.split_once(':').ok_or_else(bad)?;
            Ok(GroupDescriptor::SpecialLinear {
                n: n.trim().parse().map_err(|_| bad())?,
                p: p.trim().parse().map_err(|_| bad())?,
            })
        } else if let Some(rest) = s.strip_prefix("product:") {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(bad)?;
            let parts = split_top_level(inner, ',')
                .into_iter()
                .map(str::parse)
                .collect::<Result<Vec<_>>>()?;
            if parts.is_empty() {
                return Err(bad());
            }
            Ok(GroupDescriptor::Product(parts))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite group with elements `0..order`. Cheap to clone.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

struct Inner {
    order: usize,
    identity: usize,
    descriptor: GroupDescriptor,
    kind: Kind,
    inverses: Vec<usize>,
    table: OnceLock<Option<Vec<u32>>>,
}

enum Kind {
    Cyclic(usize),
    Product {
        factors: Vec<FiniteGroup>,
        // strides[i] = product of the orders of factors after i
        strides: Vec<usize>,
    },
    SpecialLinear(SlData),
}

struct SlData {
    n: usize,
    p: u32,
    /// Sorted base-p encodings of the row-major entries.
    keys: Vec<u64>,
}

impl SlData {
    fn decode(&self, mut key: u64) -> Vec<u32> {
        let len = self.n * self.n;
        let mut entries = vec![0u32; len];
        for slot in entries.iter_mut().rev() {
            *slot = (key % self.p as u64) as u32;
            key /= self.p as u64;
        }
        entries
    }

    fn encode(&self, entries: &[u32]) -> u64 {
        entries
            .iter()
            .fold(0u64, |acc, &e| acc * self.p as u64 + e as u64)
    }

    fn index_of(&self, entries: &[u32]) -> Option<usize> {
        self.keys.binary_search(&self.encode(entries)).ok()
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.n;
        let p = self.p as u64;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += a[i * n + k] as u64 * b[k * n + j] as u64;
                }
                out[i * n + j] = (acc % p) as u32;
            }
        }
        out
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("descriptor", &self.inner.descriptor.to_string())
            .field("order", &self.inner.order)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.descriptor == other.inner.descriptor
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    fn from_parts(order: usize, identity: usize, descriptor: GroupDescriptor, kind: Kind, inverses: Vec<usize>) -> Self {
        debug_assert_eq!(inverses.len(), order);
        FiniteGroup {
            inner: Arc::new(Inner {
                order,
                identity,
                descriptor,
                kind,
                inverses,
                table: OnceLock::new(),
            }),
        }
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(self.inner.identity)
    }

    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.inner.descriptor
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> {
        (0..self.order()).map(GroupElement)
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        g.0 < self.order()
    }

    pub fn is_abelian(&self) -> bool {
        match &self.inner.kind {
            Kind::Cyclic(_) => true,
            Kind::Product { factors, .. } => factors.iter().all(FiniteGroup::is_abelian),
            Kind::SpecialLinear(_) => false,
        }
    }

    pub fn multiply(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let order = self.order();
        if order <= TABLE_CAP {
            let table = self.inner.table.get_or_init(|| Some(self.build_table()));
            if let Some(table) = table {
                return GroupElement(table[a.0 * order + b.0] as usize);
            }
        }
        GroupElement(self.multiply_raw(a.0, b.0))
    }

    pub fn invert(&self, g: GroupElement) -> GroupElement {
        GroupElement(self.inner.inverses[g.0])
    }

    /// `a b a^-1 b^-1`
    pub fn commutator(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let ab = self.multiply(a, b);
        let ab_ai = self.multiply(ab, self.invert(a));
        self.multiply(ab_ai, self.invert(b))
    }

    pub fn power(&self, g: GroupElement, k: usize) -> GroupElement {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.multiply(acc, g);
        }
        acc
    }

    /// Smallest `k >= 1` with `g^k = e`.
    pub fn element_order(&self, g: GroupElement) -> usize {
        let e = self.identity();
        let mut acc = g;
        let mut k = 1;
        while acc != e {
            acc = self.multiply(acc, g);
            k += 1;
        }
        k
    }

    fn build_table(&self) -> Vec<u32> {
        let order = self.order();
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(self.multiply_raw(a, b) as u32);
            }
        }
        table
    }

    fn multiply_raw(&self, a: usize, b: usize) -> usize {
        match &self.inner.kind {
            Kind::Cyclic(n) => (a + b) % n,
            Kind::Product { factors, strides } => {
                let mut out = 0;
                for (f, &stride) in factors.iter().zip(strides) {
                    let fa = (a / stride) % f.order();
                    let fb = (b / stride) % f.order();
                    out += f.multiply(GroupElement(fa), GroupElement(fb)).0 * stride;
                }
                out
            }
            Kind::SpecialLinear(sl) => {
                let prod = sl.mul(&sl.decode(sl.keys[a]), &sl.decode(sl.keys[b]));
                sl.index_of(&prod).expect("SL is closed under multiplication")
            }
        }
    }

    /// Factor components of an element of a direct product.
    pub fn components(&self, g: GroupElement) -> Option<Vec<GroupElement>> {
        match &self.inner.kind {
            Kind::Product { factors, strides } => Some(
                factors
                    .iter()
                    .zip(strides)
                    .map(|(f, &stride)| GroupElement((g.0 / stride) % f.order()))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Inverse of [`FiniteGroup::components`].
    pub fn compose(&self, parts: &[GroupElement]) -> Option<GroupElement> {
        match &self.inner.kind {
            Kind::Product { factors, strides } if parts.len() == factors.len() => {
                let mut id = 0;
                for ((f, &stride), part) in factors.iter().zip(strides).zip(parts) {
                    if !f.contains(*part) {
                        return None;
                    }
                    id += part.0 * stride;
                }
                Some(GroupElement(id))
            }
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[FiniteGroup]> {
        match &self.inner.kind {
            Kind::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// `(n, p)` for `SL_n(F_p)`.
    pub fn sl_parameters(&self) -> Option<(usize, u32)> {
        match &self.inner.kind {
            Kind::SpecialLinear(sl) => Some((sl.n, sl.p)),
            _ => None,
        }
    }

    /// Row-major matrix entries of an `SL_n(F_p)` element.
    pub fn matrix(&self, g: GroupElement) -> Option<Vec<u32>> {
        match &self.inner.kind {
            Kind::SpecialLinear(sl) => Some(sl.decode(sl.keys[g.0])),
            _ => None,
        }
    }

    /// Looks up a row-major matrix; entries are reduced mod p.
    pub fn element_of_matrix(&self, entries: &[u32]) -> Option<GroupElement> {
        match &self.inner.kind {
            Kind::SpecialLinear(sl) if entries.len() == sl.n * sl.n => {
                let reduced: Vec<u32> = entries.iter().map(|e| e % sl.p).collect();
                sl.index_of(&reduced).map(GroupElement)
            }
            _ => None,
        }
    }

    /// The elementary transvection `I + e_{i,j}` (0-based, `i != j`).
    pub fn elementary(&self, i: usize, j: usize) -> Option<GroupElement> {
        let (n, _) = self.sl_parameters()?;
        if i >= n || j >= n || i == j {
            return None;
        }
        let mut entries = identity_entries(n);
        entries[i * n + j] = 1;
        self.element_of_matrix(&entries)
    }

    /// Human-readable element: `3`, `(1,2)`, or `[[1,1],[0,1]]`.
    pub fn element_label(&self, g: GroupElement) -> String {
        match &self.inner.kind {
            Kind::Cyclic(_) => g.0.to_string(),
            Kind::Product { factors, .. } => {
                let parts = self.components(g).expect("product");
                let labels: Vec<String> = factors
                    .iter()
                    .zip(parts)
                    .map(|(f, part)| f.element_label(part))
                    .collect();
                format!("({})", labels.join(","))
            }
            Kind::SpecialLinear(sl) => {
                let entries = sl.decode(sl.keys[g.0]);
                let rows: Vec<String> = entries
                    .chunks(sl.n)
                    .map(|row| {
                        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
        }
    }

    /// Parses the format produced by [`FiniteGroup::element_label`]. Cyclic
    /// residues may be negative (`-2` in `Z/6` is `4`).
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let text = text.trim();
        let bad = || Error::Parse(format!("`{text}` is not an element of {}", self.descriptor()));
        match &self.inner.kind {
            Kind::Cyclic(n) => {
                let v: i64 = text.parse().map_err(|_| bad())?;
                Ok(GroupElement(v.rem_euclid(*n as i64) as usize))
            }
            Kind::Product { factors, .. } => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let pieces = split_top_level(inner, ',');
                if pieces.len() != factors.len() {
                    return Err(bad());
                }
                let parts = factors
                    .iter()
                    .zip(pieces)
                    .map(|(f, piece)| f.parse_element(piece))
                    .collect::<Result<Vec<_>>>()?;
                self.compose(&parts).ok_or_else(bad)
            }
            Kind::SpecialLinear(sl) => {
                let entries = text
                    .split(|c: char| c == '[' || c == ']' || c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<i64>().map(|v| v.rem_euclid(sl.p as i64) as u32))
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad())?;
                self.element_of_matrix(&entries).ok_or_else(bad)
            }
        }
    }
}

fn identity_entries(n: usize) -> Vec<u32> {
    let mut entries = vec![0u32; n * n];
    for i in 0..n {
        entries[i * n + i] = 1;
    }
    entries
}

pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    make_cyclic_capped(n, Capacity::default())
}

pub fn make_cyclic_capped(n: usize, capacity: Capacity) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic group order must be at least 1".into()));
    }
    capacity.check(format_args!("cyclic:{n}"), n as u128)?;
    let inverses = (0..n).map(|g| (n - g) % n).collect();
    Ok(FiniteGroup::from_parts(n, 0, GroupDescriptor::Cyclic(n), Kind::Cyclic(n), inverses))
}

pub fn direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_of(vec![g1.clone(), g2.clone()], Capacity::default())
}

/// Direct product of any number of factors, ids row-major.
pub fn direct_product_of(factors: Vec<FiniteGroup>, capacity: Capacity) -> Result<FiniteGroup> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("direct product needs at least one factor".into()));
    }
    let descriptor = GroupDescriptor::Product(factors.iter().map(|f| f.descriptor().clone()).collect());
    let needed = factors.iter().map(|f| f.order() as u128).product::<u128>();
    let order = capacity.check(&descriptor, needed)?;

    let mut strides = vec![1usize; factors.len()];
    for i in (0..factors.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * factors[i + 1].order();
    }
    let identity = factors
        .iter()
        .zip(&strides)
        .map(|(f, s)| f.identity().0 * s)
        .sum();
    let inverses = (0..order)
        .map(|g| {
            factors
                .iter()
                .zip(&strides)
                .map(|(f, &s)| f.invert(GroupElement((g / s) % f.order())).0 * s)
                .sum()
        })
        .collect();
    Ok(FiniteGroup::from_parts(
        order,
        identity,
        descriptor,
        Kind::Product { factors, strides },
        inverses,
    ))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `(1/(p-1)) * prod_{k=0}^{n-1} (p^n - p^k)`
pub fn sl_order_formula(n: usize, p: u32) -> Option<u128> {
    let p = p as u128;
    let pn = p.checked_pow(n as u32)?;
    let mut prod: u128 = 1;
    for k in 0..n {
        prod = prod.checked_mul(pn - p.pow(k as u32))?;
    }
    Some(prod / (p - 1))
}

pub fn make_sl(n: usize, p: u32) -> Result<FiniteGroup> {
    make_sl_capped(n, p, Capacity::default())
}

pub fn make_sl_capped(n: usize, p: u32, capacity: Capacity) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("SL_n needs n >= 2, got {n}")));
    }
    if !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let what = format!("sl:{n}:{p}");
    let expected = sl_order_formula(n, p).ok_or_else(|| Error::capacity(&what, u128::MAX, capacity.0))?;
    capacity.check(&what, expected)?;
    let cells = (n * n) as u32;
    let candidates = (p as u64)
        .checked_pow(cells)
        .ok_or_else(|| Error::capacity(&what, u128::MAX, capacity.0))?;

    let mut data = SlData { n, p, keys: Vec::with_capacity(expected as usize) };
    for key in 0..candidates {
        if det_mod_p(&data.decode(key), n, p) == 1 {
            data.keys.push(key);
        }
    }
    debug_assert_eq!(data.keys.len() as u128, expected);

    let identity = data.index_of(&identity_entries(n)).expect("identity has determinant 1");
    let inverses = data
        .keys
        .iter()
        .map(|&key| {
            let inv = inverse_mod_p(&data.decode(key), n, p).expect("determinant is a unit");
            data.index_of(&inv).expect("inverse has determinant 1")
        })
        .collect();
    let order = data.keys.len();
    Ok(FiniteGroup::from_parts(
        order,
        identity,
        GroupDescriptor::SpecialLinear { n, p },
        Kind::SpecialLinear(data),
        inverses,
    ))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

fn det_mod_p(entries: &[u32], n: usize, p: u32) -> u64 {
    let p = p as u64;
    let mut m: Vec<u64> = entries.iter().map(|&e| e as u64).collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r * n + col] != 0) else {
            return 0;
        };
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
            }
            det = (p - det) % p;
        }
        let pv = m[col * n + col];
        det = det * pv % p;
        let pinv = inv_mod(pv, p);
        for r in col + 1..n {
            let factor = m[r * n + col] * pinv % p;
            if factor == 0 {
                continue;
            }
            for c in col..n {
                m[r * n + c] = (m[r * n + c] + p * p - factor * m[col * n + c] % p) % p;
            }
        }
    }
    det
}

fn inverse_mod_p(entries: &[u32], n: usize, p: u32) -> Option<Vec<u32>> {
    let p = p as u64;
    let w = 2 * n;
    let mut m = vec![0u64; n * w];
    for r in 0..n {
        for c in 0..n {
            m[r * w + c] = entries[r * n + c] as u64;
        }
        m[r * w + n + r] = 1;
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r * w + col] != 0)?;
        if pivot != col {
            for c in 0..w {
                m.swap(pivot * w + c, col * w + c);
            }
        }
        let pinv = inv_mod(m[col * w + col], p);
        for c in 0..w {
            m[col * w + c] = m[col * w + c] * pinv % p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = m[r * w + col];
            if factor == 0 {
                continue;
            }
            for c in 0..w {
                m[r * w + c] = (m[r * w + c] + p * p - factor * m[col * w + c] % p) % p;
            }
        }
    }
    Some((0..n * n).map(|i| m[(i / n) * w + n + i % n] as u32).collect())
}

/// Smallest subset containing `seed` and the identity that is closed under
/// multiplication and inversion.
pub fn subgroup_closure(group: &FiniteGroup, seed: impl IntoIterator<Item = GroupElement>) -> BTreeSet<GroupElement> {
    let mut gens: Vec<GroupElement> = Vec::new();
    for g in seed {
        assert!(group.contains(g), "element {g} outside {}", group.descriptor());
        gens.push(g);
        gens.push(group.invert(g));
    }
    gens.sort();
    gens.dedup();

    let mut seen = vec![false; group.order()];
    let e = group.identity();
    seen[e.0] = true;
    let mut worklist = vec![e];
    while let Some(x) = worklist.pop() {
        for &s in &gens {
            let y = group.multiply(s, x);
            if !seen[y.0] {
                seen[y.0] = true;
                worklist.push(y);
            }
        }
    }
    seen.iter()
        .enumerate()
        .filter(|(_, &hit)| hit)
        .map(|(i, _)| GroupElement(i))
        .collect()
}

/// An identity-free subset of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    group: FiniteGroup,
    elements: BTreeSet<GroupElement>,
}

impl GeneratorSet {
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        let elements: BTreeSet<GroupElement> = elements.into_iter().collect();
        if let Some(g) = elements.iter().find(|g| !group.contains(**g)) {
            return Err(Error::InvalidGenerator(format!(
                "element {g} is outside {} (order {})",
                group.descriptor(),
                group.order()
            )));
        }
        if elements.contains(&group.identity()) {
            return Err(Error::InvalidGenerator("the identity cannot be a generator".into()));
        }
        Ok(GeneratorSet { group: group.clone(), elements })
    }

    /// Parses a comma separated list of element labels, e.g. `2,3` or `(1,0),(0,1)`.
    pub fn parse(group: &FiniteGroup, text: &str) -> Result<Self> {
        let elements = split_top_level(text, ',')
            .into_iter()
            .filter(|t| !t.trim().is_empty())
            .map(|t| group.parse_element(t))
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(group, elements)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &BTreeSet<GroupElement> {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.elements.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.elements.contains(&g)
    }

    pub fn is_symmetric(&self) -> bool {
        self.elements.iter().all(|&g| self.elements.contains(&self.group.invert(g)))
    }

    /// `S ∪ S⁻¹`
    pub fn symmetric_closure(&self) -> GeneratorSet {
        let mut elements = self.elements.clone();
        elements.extend(self.elements.iter().map(|&g| self.group.invert(g)));
        GeneratorSet { group: self.group.clone(), elements }
    }

    pub fn is_generating(&self) -> bool {
        subgroup_closure(&self.group, self.iter()).len() == self.group.order()
    }

    pub fn labels(&self) -> Vec<String> {
        self.iter().map(|g| self.group.element_label(g)).collect()
    }
}

pub fn symmetric_closure(gens: &GeneratorSet) -> GeneratorSet {
    gens.symmetric_closure()
}

pub fn is_generating(gens: &GeneratorSet) -> bool {
    gens.is_generating()
}

/// `{E_{i,i+1}, E_{i+1,i}}` in an `SL_n(F_p)` group.
pub fn elementary_generators(group: &FiniteGroup) -> Result<GeneratorSet> {
    let (n, _) = group
        .sl_parameters()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not a special linear group", group.descriptor())))?;
    let mut elements = Vec::with_capacity(2 * (n - 1));
    for i in 0..n - 1 {
        elements.push(group.elementary(i, i + 1).expect("transvection"));
        elements.push(group.elementary(i + 1, i).expect("transvection"));
    }
    GeneratorSet::new(group, elements)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangularSide {
    Upper,
    Lower,
}

/// All unipotent upper (or lower) triangular matrices except the identity.
pub fn triangular_generators(group: &FiniteGroup, side: TriangularSide) -> Result<BTreeSet<GroupElement>> {
    let (n, p) = group
        .sl_parameters()
        .ok_or_else(|| Error::InvalidParameter(format!("{} is not a special linear group", group.descriptor())))?;
    let slots: Vec<usize> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| match side {
            TriangularSide::Upper => i < j,
            TriangularSide::Lower => i > j,
        })
        .map(|(i, j)| i * n + j)
        .collect();
    let count = (p as u128).pow(slots.len() as u32);
    // every one of these is a group element, so the group order already bounds the count
    debug_assert!(count <= group.order() as u128);

    let mut out = BTreeSet::new();
    let mut digits = vec![0u32; slots.len()];
    loop {
        let mut entries = identity_entries(n);
        for (&slot, &d) in slots.iter().zip(&digits) {
            entries[slot] = d;
        }
        out.insert(group.element_of_matrix(&entries).expect("unipotent matrices have determinant 1"));
        // odometer
        let mut k = 0;
        while k < digits.len() {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if k == digits.len() {
            break;
        }
    }
    out.remove(&group.identity());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> BTreeSet<GroupElement> {
        v.iter().copied().map(GroupElement).collect()
    }

    #[test]
    fn cyclic_arithmetic() {
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.identity(), GroupElement(0));

        let c6 = make_cyclic(6).unwrap();
        assert_eq!(c6.multiply(GroupElement(2), GroupElement(3)), GroupElement(5));
        assert_eq!(c6.invert(GroupElement(2)), GroupElement(4));
        assert!(matches!(make_cyclic(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn closure_in_c12() {
        let c12 = make_cyclic(12).unwrap();
        assert_eq!(subgroup_closure(&c12, [GroupElement(2)]), ids(&[0, 2, 4, 6, 8, 10]));
        let c6 = make_cyclic(6).unwrap();
        assert_eq!(subgroup_closure(&c6, []), ids(&[0]));
    }

    #[test]
    fn products() {
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(direct_product(&c1, &c1).unwrap().order(), 1);

        let c3 = make_cyclic(3).unwrap();
        let c33 = direct_product(&c3, &c3).unwrap();
        assert_eq!(c33.order(), 9);
        assert!(c33.elements().all(|g| c33.element_order(g) < 9));
        assert_eq!(c33.element_label(GroupElement(5)), "(1,2)");
        assert_eq!(c33.parse_element("(1,2)").unwrap(), GroupElement(5));
        assert_eq!(c33.descriptor().to_string(), "product:(cyclic:3,cyclic:3)");
    }

    #[test]
    fn product_capacity() {
        let c = make_cyclic(1000).unwrap();
        let err = direct_product_of(vec![c.clone(), c.clone(), c], Capacity(1_000_000)).unwrap_err();
        assert!(matches!(err, Error::CapacityExceeded { .. }));
    }

    #[test]
    fn sl_orders() {
        assert_eq!(make_sl(2, 2).unwrap().order(), 6);
        assert_eq!(make_sl(2, 3).unwrap().order(), 24);
        assert_eq!(make_sl(3, 2).unwrap().order(), 168);
        assert_eq!(sl_order_formula(2, 2), Some(6));
        assert_eq!(sl_order_formula(3, 2), Some(168));
        assert!(matches!(make_sl(2, 4), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_sl(1, 3), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_sl_capped(3, 3, Capacity(1000)), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn commutator_of_transvections() {
        let g = make_sl(3, 2).unwrap();
        let e12 = g.elementary(0, 1).unwrap();
        let e23 = g.elementary(1, 2).unwrap();
        let e13 = g.elementary(0, 2).unwrap();
        assert_eq!(g.commutator(e12, e23), e13);
        let closure = subgroup_closure(&g, [e12, e23]);
        assert!(closure.contains(&e13));
    }

    #[test]
    fn sl_identity_and_labels() {
        let g = make_sl(2, 3).unwrap();
        assert_eq!(g.element_label(g.identity()), "[[1,0],[0,1]]");
        let e12 = g.elementary(0, 1).unwrap();
        assert_eq!(g.parse_element("[[1,1],[0,1]]").unwrap(), e12);
        assert_eq!(g.invert(e12), g.parse_element("[[1,2],[0,1]]").unwrap());
        assert_eq!(g.descriptor().to_string(), "sl:2:3");
    }

    #[test]
    fn symmetric_closures() {
        let c6 = make_cyclic(6).unwrap();
        let s = GeneratorSet::new(&c6, [GroupElement(2), GroupElement(3)]).unwrap();
        assert_eq!(s.symmetric_closure().elements(), &ids(&[2, 3, 4]));

        let c12 = make_cyclic(12).unwrap();
        let s = GeneratorSet::new(&c12, [GroupElement(2), GroupElement(3)]).unwrap();
        let sym = s.symmetric_closure();
        assert_eq!(sym.elements(), &ids(&[2, 3, 9, 10]));
        assert_eq!(sym.symmetric_closure(), sym);

        assert!(matches!(
            GeneratorSet::new(&c6, [GroupElement(0)]),
            Err(Error::InvalidGenerator(_))
        ));
    }

    #[test]
    fn generation() {
        let c6 = make_cyclic(6).unwrap();
        assert!(GeneratorSet::parse(&c6, "2,3").unwrap().is_generating());
        assert!(!GeneratorSet::parse(&c6, "2").unwrap().is_generating());
        assert!(!GeneratorSet::new(&c6, []).unwrap().is_generating());
    }

    #[test]
    fn elementary_sets() {
        let g = make_sl(2, 3).unwrap();
        let s = elementary_generators(&g).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.symmetric_closure().len(), 4);

        let g = make_sl(2, 2).unwrap();
        let s = elementary_generators(&g).unwrap();
        assert_eq!(s.symmetric_closure(), s);
        assert_eq!(s.len(), 2);

        let g = make_sl(3, 2).unwrap();
        let s = elementary_generators(&g).unwrap();
        assert_eq!(subgroup_closure(&g, s.iter()).len(), 168);
    }

    #[test]
    fn triangular_sets() {
        let g = make_sl(2, 3).unwrap();
        assert_eq!(triangular_generators(&g, TriangularSide::Upper).unwrap().len(), 2);
        let g = make_sl(2, 2).unwrap();
        assert_eq!(triangular_generators(&g, TriangularSide::Upper).unwrap().len(), 1);
        let g = make_sl(3, 2).unwrap();
        assert_eq!(triangular_generators(&g, TriangularSide::Lower).unwrap().len(), 7);
    }

    #[test]
    fn descriptor_round_trip() {
        for text in ["cyclic:6", "sl:2:3", "product:(cyclic:4,cyclic:3)", "product:(product:(cyclic:2,cyclic:2),sl:2:2)"] {
            let d: GroupDescriptor = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
        assert!("dihedral:4".parse::<GroupDescriptor>().is_err());
        let g = "product:(cyclic:4,cyclic:3)".parse::<GroupDescriptor>().unwrap().build(Capacity::default()).unwrap();
        assert_eq!(g.order(), 12);
    }
}
