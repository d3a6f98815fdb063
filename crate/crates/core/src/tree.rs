//! Plane trees, forests, validity predicates and hook lengths.
//!
//! Leaves are stored explicitly. Vertices are addressed by their 0-based
//! preorder index (root first, children left to right); in a forest the
//! numbering continues from one tree to the next.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A rooted tree whose children are linearly ordered.
///
/// Serializes to nested arrays: a leaf is `[]`, an internal vertex is the
/// array of its children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlaneTree {
    children: Vec<PlaneTree>,
}

/// A linearly ordered sequence of plane trees.
pub type Forest = Vec<PlaneTree>;

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree { children: Vec::new() }
    }

    pub fn node(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    /// Root with `k` leaf children.
    pub fn star(k: usize) -> Self {
        PlaneTree::node(vec![PlaneTree::leaf(); k])
    }

    pub fn children(&self) -> &[PlaneTree] {
        &self.children
    }

    pub fn into_children(self) -> Vec<PlaneTree> {
        self.children
    }

    pub fn degree(&self) -> usize {
        self.children.len()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::vertex_count).sum::<usize>()
    }

    pub fn internal_count(&self) -> usize {
        if self.is_leaf() {
            0
        } else {
            1 + self.children.iter().map(PlaneTree::internal_count).sum::<usize>()
        }
    }

    pub fn leaf_count(&self) -> usize {
        if self.is_leaf() {
            1
        } else {
            self.children.iter().map(PlaneTree::leaf_count).sum()
        }
    }

    /// Visits every vertex in preorder with its level.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: vec![(self, 0)] }
    }

    /// The subtree rooted at preorder index `index`.
    pub fn subtree(&self, index: usize) -> Option<&PlaneTree> {
        self.preorder().nth(index).map(|(t, _)| t)
    }

    /// Level of the vertex at preorder index `index`.
    pub fn level_of(&self, index: usize) -> Option<usize> {
        self.preorder().nth(index).map(|(_, level)| level)
    }

    /// Replaces the subtree at preorder index `index` by `with`, returning the
    /// removed subtree.
    pub fn replace_subtree(&mut self, index: usize, with: PlaneTree) -> Option<PlaneTree> {
        fn go(t: &mut PlaneTree, target: usize, next: &mut usize, with: &mut Option<PlaneTree>) -> Option<PlaneTree> {
            if *next == target {
                return Some(std::mem::replace(t, with.take().expect("replacement consumed once")));
            }
            *next += 1;
            for child in &mut t.children {
                if let Some(old) = go(child, target, next, with) {
                    return Some(old);
                }
            }
            None
        }
        let mut slot = Some(with);
        go(self, index, &mut 0, &mut slot)
    }

    /// True iff every internal vertex has exactly `m` children.
    pub fn is_complete_mary(&self, m: u32) -> bool {
        self.preorder().all(|(t, _)| t.is_leaf() || t.degree() == m as usize)
    }

    /// Checks the (k,m)-ary tree conditions and returns the order (number of
    /// odd-level vertices of degree `m`) when they hold.
    ///
    /// Even-level vertices must have degree `k`; odd-level vertices degree `m`
    /// or 0.
    pub fn km_order(&self, k: u32, m: u32) -> Option<usize> {
        let mut order = 0;
        for (t, level) in self.preorder() {
            let d = t.degree();
            if level % 2 == 0 {
                if d != k as usize {
                    return None;
                }
            } else if d == m as usize {
                order += 1;
            } else if d != 0 {
                return None;
            }
        }
        Some(order)
    }

    /// Number of vertices on even levels.
    pub fn even_level_count(&self) -> usize {
        self.preorder().filter(|(_, level)| level % 2 == 0).count()
    }

    /// Preorder indices of the odd-level vertices of degree `m`.
    pub fn crucial_vertices(&self, m: u32) -> Vec<usize> {
        self.preorder()
            .enumerate()
            .filter(|(_, (t, level))| level % 2 == 1 && !t.is_leaf() && t.degree() == m as usize)
            .map(|(i, _)| i)
            .collect()
    }

    /// Preorder indices of the leaves.
    pub fn leaves(&self) -> Vec<usize> {
        self.preorder()
            .enumerate()
            .filter(|(_, (t, _))| t.is_leaf())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn hook_table(&self, mode: HookMode) -> HookTable {
        let mut entries = BTreeMap::new();
        collect_hooks(self, mode, &mut 0, &mut entries);
        HookTable { entries }
    }

    /// Balanced-parentheses form: a leaf is `()`, an internal vertex wraps the
    /// concatenation of its children.
    pub fn to_paren(&self) -> String {
        let mut out = String::with_capacity(2 * self.vertex_count());
        write_paren(self, &mut out);
        out
    }

    /// Nested-array form, e.g. `[[],[]]` for a root with two leaves.
    pub fn to_structured(&self) -> String {
        serde_json::to_string(self).expect("tree serialization is infallible")
    }

    pub fn from_structured(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn write_paren(t: &PlaneTree, out: &mut String) {
    out.push('(');
    for c in &t.children {
        write_paren(c, out);
    }
    out.push(')');
}

fn collect_hooks(t: &PlaneTree, mode: HookMode, next: &mut usize, out: &mut BTreeMap<usize, usize>) -> usize {
    let id = *next;
    *next += 1;
    let below: usize = t.children.iter().map(|c| collect_hooks(c, mode, next, out)).sum();
    let counted = match mode {
        HookMode::InternalOnly => !t.is_leaf(),
        HookMode::AllVertices => true,
    };
    if counted {
        out.insert(id, below + 1);
        below + 1
    } else {
        below
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_paren())
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.trim().as_bytes();
        let mut pos = 0;
        let t = parse_paren(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse(format!("trailing input at byte {pos}")));
        }
        Ok(t)
    }
}

fn parse_paren(bytes: &[u8], pos: &mut usize) -> Result<PlaneTree> {
    if bytes.get(*pos) != Some(&b'(') {
        return Err(Error::Parse(format!("expected '(' at byte {}", *pos)));
    }
    *pos += 1;
    let mut children = Vec::new();
    loop {
        match bytes.get(*pos) {
            Some(b')') => {
                *pos += 1;
                return Ok(PlaneTree::node(children));
            }
            Some(b'(') => children.push(parse_paren(bytes, pos)?),
            Some(_) => return Err(Error::Parse(format!("unexpected byte at {}", *pos))),
            None => return Err(Error::Parse("unbalanced parentheses".into())),
        }
    }
}

pub struct Preorder<'a> {
    stack: Vec<(&'a PlaneTree, usize)>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = (&'a PlaneTree, usize);

    fn next(&mut self) -> Option<Self::Item> {
        let (t, level) = self.stack.pop()?;
        self.stack.extend(t.children.iter().rev().map(|c| (c, level + 1)));
        Some((t, level))
    }
}

/// Which vertices carry a hook length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HookMode {
    /// Complete m-ary trees: only internal vertices, counting internal
    /// vertices below.
    InternalOnly,
    /// Plane forests: every vertex, counting every vertex below.
    AllVertices,
}

/// Hook lengths keyed by preorder index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HookTable {
    entries: BTreeMap<usize, usize>,
}

impl HookTable {
    /// All-vertices hook table of a forest; indices continue across trees.
    pub fn forest(forest: &[PlaneTree]) -> Self {
        let mut entries = BTreeMap::new();
        let mut next = 0;
        for t in forest {
            collect_hooks(t, HookMode::AllVertices, &mut next, &mut entries);
        }
        HookTable { entries }
    }

    pub fn get(&self, vertex: usize) -> Option<usize> {
        self.entries.get(&vertex).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Hook lengths in preorder.
    pub fn hooks(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.values().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().map(|(&v, &h)| (v, h))
    }
}

/// `[` + concatenated tree paren forms + `]`; the empty forest is `[]`.
pub fn forest_to_paren(forest: &[PlaneTree]) -> String {
    let mut out = String::from("[");
    for t in forest {
        write_paren(t, &mut out);
    }
    out.push(']');
    out
}

pub fn forest_from_paren(s: &str) -> Result<Forest> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse("forest must be enclosed in brackets".into()))?;
    let bytes = inner.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < bytes.len() {
        out.push(parse_paren(bytes, &mut pos)?);
    }
    Ok(out)
}

pub fn forest_to_structured(forest: &[PlaneTree]) -> String {
    serde_json::to_string(forest).expect("forest serialization is infallible")
}

pub fn forest_from_structured(s: &str) -> Result<Forest> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn forest_vertex_count(forest: &[PlaneTree]) -> usize {
    forest.iter().map(PlaneTree::vertex_count).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PlaneTree {
        s.parse().unwrap()
    }

    #[test]
    fn complete_mary_predicate() {
        assert!(PlaneTree::leaf().is_complete_mary(2));
        assert!(PlaneTree::star(2).is_complete_mary(2));
        assert!(!PlaneTree::star(2).is_complete_mary(3));
        assert!(p("((()())())").is_complete_mary(2));
        assert!(!p("((())())").is_complete_mary(2));
    }

    #[test]
    fn km_predicate() {
        // An even-level vertex of degree 2 breaks k = 3.
        assert_eq!(p("((()())()())").km_order(3, 2), None);
        // An odd-level vertex of degree 1 breaks m = 2.
        assert_eq!(p("(((()()()))()())").km_order(3, 2), None);

        // Root degree 3, two crucial children, one crucial grandchild.
        let k3 = "(()()())";
        let crucial = |a: &str, b: &str| format!("({a}{b})");
        let inner = format!("((){}())", crucial(k3, k3));
        let sample = format!("({}(){})", crucial(k3, k3), crucial(&inner, k3));
        let t = p(&sample);
        assert_eq!(t.km_order(3, 2), Some(3));
        assert_eq!(t.vertex_count(), (2 * 3 + 1) * (3 + 1));

        for m in 1..4 {
            assert_eq!(PlaneTree::star(3).km_order(3, m), Some(0));
        }
        assert_eq!(PlaneTree::leaf().km_order(2, 2), None);
    }

    #[test]
    fn hooks_of_binary_three() {
        let comb = p("(((()())())())");
        let hooks: Vec<_> = comb.hook_table(HookMode::InternalOnly).hooks().collect();
        assert_eq!(hooks, vec![3, 2, 1]);
        let balanced = p("((()())(()()))");
        let mut hooks: Vec<_> = balanced.hook_table(HookMode::InternalOnly).hooks().collect();
        hooks.sort_unstable();
        assert_eq!(hooks, vec![1, 1, 3]);
        let t = balanced.hook_table(HookMode::InternalOnly);
        assert_eq!(t.get(0), Some(3));
        assert_eq!(t.get(1), Some(1));
        assert_eq!(t.get(2), None);
    }

    #[test]
    fn single_vertex_hooks() {
        let t = PlaneTree::leaf().hook_table(HookMode::AllVertices);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(PlaneTree::leaf().hook_table(HookMode::InternalOnly).is_empty());
    }

    #[test]
    fn forest_hooks_continue_numbering() {
        let f = vec![p("(())"), p("()")];
        let t = HookTable::forest(&f);
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, 2), (1, 1), (2, 1)]);
    }

    #[test]
    fn text_forms() {
        let t = PlaneTree::star(2);
        assert_eq!(t.to_paren(), "(()())");
        assert_eq!(t.to_structured(), "[[],[]]");
        assert_eq!(PlaneTree::from_structured("[[],[[],[]]]").unwrap().to_paren(), "(()(()()))");
        assert_eq!(forest_to_paren(&[]), "[]");
        assert_eq!(forest_to_structured(&[]), "[]");
        assert_eq!(forest_to_paren(&[PlaneTree::leaf(), PlaneTree::leaf()]), "[()()]");
        assert_eq!(forest_from_paren("[()(())]").unwrap().len(), 2);
        assert!("(()".parse::<PlaneTree>().is_err());
        assert!("()()".parse::<PlaneTree>().is_err());
        assert!("(x)".parse::<PlaneTree>().is_err());
    }

    #[test]
    fn subtree_surgery() {
        let mut t = p("((()())())");
        assert_eq!(t.level_of(2), Some(2));
        let old = t.replace_subtree(1, PlaneTree::leaf()).unwrap();
        assert_eq!(old, PlaneTree::star(2));
        assert_eq!(t, PlaneTree::star(2));
        assert!(t.replace_subtree(9, PlaneTree::leaf()).is_none());
    }
}
