//! The infinite dyadic tree and its segments.
//!
//! Nodes are finite 0/1 strings ordered by "is a prefix of"; the empty string
//! is the root. A *segment* is an order interval `[s, t]` with `s ≤ t`, which
//! in a tree is exactly a vertical chain: one node per level, each the parent
//! of the next. A *segment family* is a finite set of pairwise node-disjoint
//! segments, kept in a canonical order so that families can be compared and
//! serialized deterministically.
//!
//! Text encodings, used across the JSON interfaces:
//! * node: its bit string, `""` for the root;
//! * segment: `"start:end"`, e.g. `":0"` for the root together with its left
//!   child;
//! * family: an array of segment strings.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Address of a node: the sequence of left/right choices from the root.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeId {
    bits: Vec<u8>,
}

impl NodeId {
    /// The root (empty path).
    pub fn root() -> Self {
        NodeId { bits: Vec::new() }
    }

    /// Builds a node from explicit bits; anything other than 0/1 is rejected.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::BadNode(format!("bit {b} is not 0 or 1")));
        }
        Ok(NodeId {
            bits: bits.to_vec(),
        })
    }

    /// Parses the text form: a string of `0`/`1` characters, `""` for the root.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => return Err(Error::BadNode(format!("character {c:?} in node {s:?}"))),
            }
        }
        Ok(NodeId { bits })
    }

    /// Depth below the root; the root has level 0.
    pub fn level(&self) -> usize {
        self.bits.len()
    }

    pub fn is_root(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// The child reached by appending `bit` (0 = left, 1 = right).
    pub fn child(&self, bit: u8) -> Result<Self> {
        if bit > 1 {
            return Err(Error::BadNode(format!("bit {bit} is not 0 or 1")));
        }
        let mut bits = self.bits.clone();
        bits.push(bit);
        Ok(NodeId { bits })
    }

    /// The parent, or `None` at the root.
    pub fn parent(&self) -> Option<Self> {
        if self.bits.is_empty() {
            None
        } else {
            Some(NodeId {
                bits: self.bits[..self.bits.len() - 1].to_vec(),
            })
        }
    }

    /// The ancestor at the given level (a prefix of this path).
    pub fn ancestor_at(&self, level: usize) -> Result<Self> {
        if level > self.level() {
            return Err(Error::BadNode(format!(
                "no ancestor of {self} at level {level} (node level {})",
                self.level()
            )));
        }
        Ok(NodeId {
            bits: self.bits[..level].to_vec(),
        })
    }

    /// Tree order: `self ≤ other` iff `self`'s path is a prefix of `other`'s.
    pub fn is_ancestor_or_equal(&self, other: &NodeId) -> bool {
        other.bits.len() >= self.bits.len() && other.bits[..self.bits.len()] == self.bits[..]
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NodeId(\"{self}\")")
    }
}

impl Serialize for NodeId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for NodeId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        NodeId::parse(&s).map_err(D::Error::custom)
    }
}

/// Outcome of comparing two nodes in the tree (prefix) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeOrder {
    Equal,
    /// The first node lies strictly above the second.
    Ancestor,
    /// The first node lies strictly below the second.
    Descendant,
    /// Neither is an ancestor of the other.
    Incomparable,
}

/// Compares two nodes in the tree order.
pub fn compare(a: &NodeId, b: &NodeId) -> NodeOrder {
    if a == b {
        NodeOrder::Equal
    } else if a.is_ancestor_or_equal(b) {
        NodeOrder::Ancestor
    } else if b.is_ancestor_or_equal(a) {
        NodeOrder::Descendant
    } else {
        NodeOrder::Incomparable
    }
}

/// An order interval `[start, end]`: the chain of nodes from `start` down to
/// `end`, both included.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    start: NodeId,
    end: NodeId,
}

impl Segment {
    /// Builds `[start, end]`; fails unless `start ≤ end` in the tree order.
    pub fn new(start: NodeId, end: NodeId) -> Result<Self> {
        if !start.is_ancestor_or_equal(&end) {
            return Err(Error::NotASegment {
                start: start.to_string(),
                end: end.to_string(),
            });
        }
        Ok(Segment { start, end })
    }

    /// The one-node segment `[t, t]`.
    pub fn singleton(node: NodeId) -> Self {
        Segment {
            start: node.clone(),
            end: node,
        }
    }

    /// Parses the text form `"start:end"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::BadSegment(format!("missing ':' in segment {s:?}")))?;
        Segment::new(NodeId::parse(a)?, NodeId::parse(b)?)
    }

    pub fn start(&self) -> &NodeId {
        &self.start
    }

    pub fn end(&self) -> &NodeId {
        &self.end
    }

    /// Number of nodes on the chain (always at least one, so there is no
    /// `is_empty`).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.end.level() - self.start.level() + 1
    }

    pub fn is_singleton(&self) -> bool {
        self.start == self.end
    }

    /// The nodes of the chain, from `start` down to `end`.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (self.start.level()..=self.end.level())
            .map(|lvl| self.end.ancestor_at(lvl).expect("levels within end"))
    }

    pub fn contains(&self, node: &NodeId) -> bool {
        self.start.is_ancestor_or_equal(node) && node.is_ancestor_or_equal(&self.end)
    }

    /// Whether two segments share a node. Two chains meet iff the lower of
    /// the two start nodes lies on the other chain.
    pub fn intersects(&self, other: &Segment) -> bool {
        other.contains(&self.start) || self.contains(&other.start)
    }

    /// The part of the segment at levels `≤ max_level`, or `None` if the whole
    /// segment lies below.
    pub fn clip_to_level(&self, max_level: usize) -> Option<Segment> {
        if self.start.level() > max_level {
            return None;
        }
        if self.end.level() <= max_level {
            return Some(self.clone());
        }
        let end = self.end.ancestor_at(max_level).expect("level below end");
        Some(Segment {
            start: self.start.clone(),
            end,
        })
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Segment(\"{self}\")")
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Segment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Segment::parse(&s).map_err(D::Error::custom)
    }
}

/// Checks pairwise disjointness of a list of segments.
pub fn family_is_disjoint(segments: &[Segment]) -> bool {
    for (i, a) in segments.iter().enumerate() {
        for b in &segments[i + 1..] {
            if a.intersects(b) {
                return false;
            }
        }
    }
    true
}

/// A finite set of pairwise disjoint segments in canonical order
/// (lexicographic by start path, then by end path).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct SegmentFamily {
    segments: Vec<Segment>,
}

impl SegmentFamily {
    /// Builds a family from segments, sorting into canonical order; fails if
    /// any two segments share a node.
    pub fn new(mut segments: Vec<Segment>) -> Result<Self> {
        segments.sort();
        segments.dedup();
        if !family_is_disjoint(&segments) {
            let culprit = first_overlap(&segments).expect("overlap exists");
            return Err(Error::OverlappingSegments {
                a: culprit.0.to_string(),
                b: culprit.1.to_string(),
            });
        }
        Ok(SegmentFamily { segments })
    }

    pub fn empty() -> Self {
        SegmentFamily {
            segments: Vec::new(),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Clips every segment to levels `≤ max_level` and drops empty clips.
    /// Clips of disjoint segments stay disjoint, so this is total.
    pub fn restrict_to_level(&self, max_level: usize) -> SegmentFamily {
        let segments: Vec<Segment> = self
            .segments
            .iter()
            .filter_map(|s| s.clip_to_level(max_level))
            .collect();
        SegmentFamily::new(segments).expect("clips of disjoint segments are disjoint")
    }

    /// All nodes covered by the family, in no particular order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.segments.iter().flat_map(|s| s.nodes())
    }
}

fn first_overlap(segments: &[Segment]) -> Option<(&Segment, &Segment)> {
    for (i, a) in segments.iter().enumerate() {
        for b in &segments[i + 1..] {
            if a.intersects(b) {
                return Some((a, b));
            }
        }
    }
    None
}

impl fmt::Display for SegmentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for SegmentFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.segments.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SegmentFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let segments = Vec::<Segment>::deserialize(deserializer)?;
        SegmentFamily::new(segments).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> NodeId {
        NodeId::parse(s).unwrap()
    }

    fn seg(s: &str) -> Segment {
        Segment::parse(s).unwrap()
    }

    #[test]
    fn node_text_round_trip() {
        for s in ["", "0", "1", "0110", "111"] {
            assert_eq!(n(s).to_string(), s);
        }
        assert!(NodeId::parse("02").is_err());
    }

    #[test]
    fn compare_follows_prefix_order() {
        assert_eq!(compare(&n(""), &n("01")), NodeOrder::Ancestor);
        assert_eq!(compare(&n("01"), &n("")), NodeOrder::Descendant);
        assert_eq!(compare(&n("01"), &n("01")), NodeOrder::Equal);
        assert_eq!(compare(&n("0"), &n("1")), NodeOrder::Incomparable);
        assert_eq!(compare(&n("00"), &n("01")), NodeOrder::Incomparable);
    }

    #[test]
    fn segment_is_a_chain() {
        let s = seg(":01");
        let nodes: Vec<String> = s.nodes().map(|x| x.to_string()).collect();
        assert_eq!(nodes, vec!["", "0", "01"]);
        assert_eq!(s.len(), 3);
        assert!(Segment::new(n("0"), n("1")).is_err());
        assert!(Segment::new(n("01"), n("0")).is_err());
    }

    #[test]
    fn intersection_of_chains() {
        assert!(seg(":0").intersects(&seg("0:00")));
        assert!(!seg("0:00").intersects(&seg("1:10")));
        assert!(!seg("00:00").intersects(&seg("01:01")));
        // Nested chains intersect.
        assert!(seg(":000").intersects(&seg("0:00")));
    }

    #[test]
    fn family_rejects_overlap_and_sorts() {
        let fam = SegmentFamily::new(vec![seg("1:1"), seg("0:00")]).unwrap();
        assert_eq!(fam.to_string(), "{0:00, 1:1}");
        assert!(SegmentFamily::new(vec![seg(":0"), seg("0:00")]).is_err());
    }

    #[test]
    fn restrict_drops_deep_segments_and_clips() {
        let fam = SegmentFamily::new(vec![seg("0:000"), seg("11:11")]).unwrap();
        let cut = fam.restrict_to_level(1);
        assert_eq!(cut.to_string(), "{0:00}".replace("00", "0")); // {0:0}
        let cut2 = fam.restrict_to_level(2);
        assert_eq!(cut2.to_string(), "{0:00, 11:11}");
        // Idempotent and monotone.
        assert_eq!(cut.restrict_to_level(1), cut);
    }

    #[test]
    fn family_json_round_trip() {
        let fam = SegmentFamily::new(vec![seg(":0"), seg("1:11")]).unwrap();
        let js = serde_json::to_string(&fam).unwrap();
        assert_eq!(js, r#"[":0","1:11"]"#);
        let back: SegmentFamily = serde_json::from_str(&js).unwrap();
        assert_eq!(back, fam);
    }
}
