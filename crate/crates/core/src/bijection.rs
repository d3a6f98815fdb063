//! Split/merge at a circled crucial vertex, and contraction of degree-1
//! levels in (k,1)- and (1,m)-ary trees.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::counting::{catalan_km, catalan_m};
use crate::enumerate::{compositions, km_trees, mary_trees};
use crate::tree::PlaneTree;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MarkKind {
    Crucial,
    Leaf,
}

/// A (k,m)-ary tree with one circled vertex, addressed by preorder index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedKmTree {
    pub tree: PlaneTree,
    pub mark: usize,
    pub kind: MarkKind,
}

impl MarkedKmTree {
    pub fn new(tree: PlaneTree, mark: usize, kind: MarkKind) -> Self {
        MarkedKmTree { tree, mark, kind }
    }

    /// Checks the tree against (k,m) and the mark against its kind; returns
    /// the order.
    pub fn validate(&self, k: u32, m: u32) -> Result<usize> {
        let order = self
            .tree
            .km_order(k, m)
            .ok_or_else(|| Error::InvalidInput(format!("not a ({k},{m})-ary tree: {}", self.tree)))?;
        let level = self
            .tree
            .level_of(self.mark)
            .ok_or_else(|| Error::InvalidInput(format!("mark {} out of range", self.mark)))?;
        let vertex = self.tree.subtree(self.mark).expect("index checked above");
        let ok = level % 2 == 1
            && match self.kind {
                MarkKind::Crucial => !vertex.is_leaf(),
                MarkKind::Leaf => vertex.is_leaf(),
            };
        if ok {
            Ok(order)
        } else {
            Err(Error::InvalidInput(format!("vertex {} is not a {:?} vertex", self.mark, self.kind)))
        }
    }
}

/// `(T_1, ..., T_m; T_{m+1})` with a circled leaf in the last tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitTuple {
    pub ordered: Vec<PlaneTree>,
    pub last: MarkedKmTree,
}

impl SplitTuple {
    /// Checks every tree and the circled leaf; returns the total order.
    pub fn validate(&self, k: u32, m: u32) -> Result<usize> {
        if self.ordered.len() != m as usize {
            return Err(Error::InvalidInput(format!("expected {m} ordered trees, got {}", self.ordered.len())));
        }
        if self.last.kind != MarkKind::Leaf {
            return Err(Error::InvalidInput("last tree must carry a circled leaf".into()));
        }
        let mut total = self.last.validate(k, m)?;
        for t in &self.ordered {
            total += t
                .km_order(k, m)
                .ok_or_else(|| Error::InvalidInput(format!("not a ({k},{m})-ary tree: {t}")))?;
        }
        Ok(total)
    }
}

/// Deletes the `m` edges below the circled crucial vertex. The subtrees that
/// hung there become `T_1..T_m`; the rest, with the vertex now a circled leaf,
/// becomes `T_{m+1}`.
pub fn split(marked: &MarkedKmTree, k: u32, m: u32) -> Result<SplitTuple> {
    if marked.kind != MarkKind::Crucial {
        return Err(Error::InvalidInput("split needs a circled crucial vertex".into()));
    }
    marked.validate(k, m)?;
    let mut residual = marked.tree.clone();
    let removed = residual
        .replace_subtree(marked.mark, PlaneTree::leaf())
        .expect("mark validated");
    let mark = residual.leaves().into_iter().find(|&i| i == marked.mark).expect("demoted vertex is a leaf");
    Ok(SplitTuple { ordered: removed.into_children(), last: MarkedKmTree::new(residual, mark, MarkKind::Leaf) })
}

/// Inverse of [`split`]: hangs `T_1..T_m` below the circled leaf of
/// `T_{m+1}` and circles the new crucial vertex.
pub fn merge(tuple: &SplitTuple, k: u32, m: u32) -> Result<MarkedKmTree> {
    tuple.validate(k, m)?;
    let mut tree = tuple.last.tree.clone();
    tree.replace_subtree(tuple.last.mark, PlaneTree::node(tuple.ordered.clone()))
        .expect("mark validated");
    let mark = tree
        .crucial_vertices(m)
        .into_iter()
        .find(|&i| i == tuple.last.mark)
        .ok_or_else(|| Error::InvalidInput("reattached vertex is not crucial".into()))?;
    Ok(MarkedKmTree::new(tree, mark, MarkKind::Crucial))
}

/// Every tree of `T_{k,m}(n)` with each of its crucial vertices circled.
pub fn marked_trees(k: u32, m: u32, n: usize, cap: u64) -> Result<Vec<MarkedKmTree>> {
    Ok(km_trees(k, m, n, cap)?
        .into_iter()
        .flat_map(|t| {
            t.crucial_vertices(m)
                .into_iter()
                .map(move |i| MarkedKmTree::new(t.clone(), i, MarkKind::Crucial))
        })
        .collect())
}

/// `m + 1` ordered (k,m)-ary trees with orders summing to `n - 1`, enumerated
/// without reference to [`split`].
fn tree_tuples(k: u32, m: u32, n: usize, cap: u64) -> Result<Vec<Vec<PlaneTree>>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let tables = (0..n).map(|i| km_trees(k, m, i, cap)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for sizes in compositions(n - 1, m as usize + 1) {
        let mut acc: Vec<Vec<PlaneTree>> = vec![Vec::new()];
        for &s in &sizes {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    tables[s].iter().map(move |t| {
                        let mut row = prefix.clone();
                        row.push(t.clone());
                        row
                    })
                })
                .collect();
        }
        out.extend(acc);
        if out.len() as u64 > cap {
            return Err(Error::CapExceeded { predicted: BigInt::from(out.len()), cap });
        }
    }
    Ok(out)
}

/// All `(T_1..T_m; T_{m+1})` tuples with a circled leaf in `T_{m+1}`.
pub fn split_tuples(k: u32, m: u32, n: usize, cap: u64) -> Result<Vec<SplitTuple>> {
    let mut out = Vec::new();
    for mut row in tree_tuples(k, m, n, cap)? {
        let last = row.pop().expect("m + 1 trees");
        for leaf in last.leaves() {
            if last.level_of(leaf).is_some_and(|l| l % 2 == 1) {
                out.push(SplitTuple { ordered: row.clone(), last: MarkedKmTree::new(last.clone(), leaf, MarkKind::Leaf) });
            }
        }
    }
    Ok(out)
}

/// The three counts behind the circled-crucial-vertex recurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCounts {
    /// Trees of order n with one circled crucial vertex.
    pub marked_trees: BigInt,
    /// `n * C_{k,m}(n)`.
    pub expected_marked: BigInt,
    /// Tuples with the circled leaf in the last tree.
    pub last_position: BigInt,
    /// `m + 1` ordered trees with one circled leaf anywhere.
    pub anywhere: BigInt,
    /// `((mn+1)k + 1 - n) * sum C(i_1)...C(i_{m+1})`.
    pub expected_anywhere: BigInt,
    /// The image of `split` equals the set of last-position tuples.
    pub split_image_matches: bool,
}

impl TupleCounts {
    pub fn holds(&self, m: u32) -> bool {
        self.marked_trees == self.expected_marked
            && self.last_position == self.marked_trees
            && self.anywhere == self.expected_anywhere
            && self.anywhere == &self.last_position * BigInt::from(m + 1)
            && self.split_image_matches
    }
}

pub fn verify_tuple_counts(k: u32, m: u32, n: usize, cap: u64) -> Result<TupleCounts> {
    let marked = marked_trees(k, m, n, cap)?;
    let image: HashSet<SplitTuple> = marked.iter().map(|t| split(t, k, m)).collect::<Result<_>>()?;

    let mut anywhere = BigInt::zero();
    let mut last_position: HashSet<SplitTuple> = HashSet::new();
    for row in tree_tuples(k, m, n, cap)? {
        anywhere += row.iter().map(|t| t.leaves().len()).sum::<usize>();
        let (last, ordered) = row.split_last().expect("m + 1 trees");
        for leaf in last.leaves() {
            last_position.insert(SplitTuple {
                ordered: ordered.to_vec(),
                last: MarkedKmTree::new(last.clone(), leaf, MarkKind::Leaf),
            });
        }
    }

    let (ku, mu, nu) = (k as u64, m as u64, n as u64);
    let expected_anywhere = if n == 0 {
        BigInt::zero()
    } else {
        let conv: BigInt = compositions(n - 1, m as usize + 1)
            .iter()
            .map(|sizes| sizes.iter().map(|&i| catalan_km(ku, mu, i as u64)).product::<BigInt>())
            .sum();
        (BigInt::from((mu * nu + 1) * ku + 1) - BigInt::from(nu)) * conv
    };

    Ok(TupleCounts {
        marked_trees: BigInt::from(marked.len()),
        expected_marked: BigInt::from(nu) * catalan_km(ku, mu, nu),
        last_position: BigInt::from(last_position.len()),
        anywhere,
        expected_anywhere,
        split_image_matches: image == last_position,
    })
}

/// Result of exhaustively round-tripping split and merge at one size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTrip {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `merge(split(t)) = t` over every marked tree and `split(merge(s)) = s`
/// over every tuple, with validity of every intermediate value.
pub fn verify_split_roundtrip(k: u32, m: u32, n: usize, cap: u64) -> Result<RoundTrip> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for t in marked_trees(k, m, n, cap)? {
        checked += 1;
        let s = split(&t, k, m)?;
        if s.validate(k, m).ok() != Some(n - 1) {
            failures.push(format!("split of {} at {} has wrong order", t.tree, t.mark));
        }
        let back = merge(&s, k, m)?;
        if back != t {
            failures.push(format!("merge(split) changed {} at {}", t.tree, t.mark));
        }
    }
    for s in split_tuples(k, m, n, cap)? {
        checked += 1;
        let t = merge(&s, k, m)?;
        if t.validate(k, m).ok() != Some(n) {
            failures.push(format!("merge of tuple at {} has wrong order", s.last.mark));
        }
        if split(&t, k, m)? != s {
            failures.push(format!("split(merge) changed tuple ending in {}", s.last.tree));
        }
    }
    Ok(RoundTrip { checked, failures })
}

/// Fuses each crucial vertex of a (k,1)-ary tree with its single child,
/// giving a complete k-ary tree with one more internal vertex than the order.
pub fn contract_k1(t: &PlaneTree, k: u32) -> Result<PlaneTree> {
    fn go(even: &PlaneTree) -> PlaneTree {
        PlaneTree::node(
            even.children()
                .iter()
                .map(|odd| match odd.children() {
                    [] => PlaneTree::leaf(),
                    [below] => go(below),
                    _ => unreachable!("validated (k,1)-ary tree"),
                })
                .collect(),
        )
    }
    t.km_order(k, 1)
        .ok_or_else(|| Error::InvalidInput(format!("not a ({k},1)-ary tree: {t}")))?;
    Ok(go(t))
}

/// Fuses each even-level vertex of a (1,m)-ary tree with its single child,
/// giving a complete m-ary tree with as many internal vertices as the order.
pub fn contract_1m(t: &PlaneTree, m: u32) -> Result<PlaneTree> {
    fn go(even: &PlaneTree) -> PlaneTree {
        let odd = &even.children()[0];
        PlaneTree::node(odd.children().iter().map(go).collect())
    }
    t.km_order(1, m)
        .ok_or_else(|| Error::InvalidInput(format!("not a (1,{m})-ary tree: {t}")))?;
    Ok(go(t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contraction {
    /// `T_{k,1}(n) -> T_k(n+1)`.
    K1(u32),
    /// `T_{1,m}(n) -> T_m(n)`.
    OneM(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionCheck {
    pub domain_size: usize,
    pub distinct_images: usize,
    pub all_in_target: bool,
    pub target_size: BigInt,
    /// The image equals the enumerated target family.
    pub image_is_target: bool,
}

impl ContractionCheck {
    pub fn holds(&self) -> bool {
        self.distinct_images == self.domain_size
            && self.all_in_target
            && BigInt::from(self.domain_size) == self.target_size
            && self.image_is_target
    }
}

/// Checks injectivity, membership and cardinality of a contraction over its
/// whole domain at order `n`.
pub fn verify_contraction(kind: Contraction, n: usize, cap: u64) -> Result<ContractionCheck> {
    let (domain, arity, internal) = match kind {
        Contraction::K1(k) => (km_trees(k, 1, n, cap)?, k, n + 1),
        Contraction::OneM(m) => (km_trees(1, m, n, cap)?, m, n),
    };
    let images = domain
        .iter()
        .map(|t| match kind {
            Contraction::K1(k) => contract_k1(t, k),
            Contraction::OneM(m) => contract_1m(t, m),
        })
        .collect::<Result<Vec<_>>>()?;
    let all_in_target = images.iter().all(|t| t.is_complete_mary(arity) && t.internal_count() == internal);
    let image_set: HashSet<PlaneTree> = images.into_iter().collect();
    let target: HashSet<PlaneTree> = mary_trees(arity, internal, cap)?.into_iter().collect();
    Ok(ContractionCheck {
        domain_size: domain.len(),
        distinct_images: image_set.len(),
        all_in_target,
        target_size: catalan_m(arity as u64, internal as u64),
        image_is_target: image_set == target,
    })
}
