//! Two-terminal series-parallel spring networks.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Raw composition node. Build one, then hand it to [`SpTree::new`] to get a
/// validated, normalized tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Node {
    /// Single spring, 1-based index.
    Leaf(usize),
    Series(Vec<Node>),
    Parallel(Vec<Node>),
}

impl Node {
    pub fn series(children: Vec<Node>) -> Node {
        Node::Series(children)
    }

    pub fn parallel(children: Vec<Node>) -> Node {
        Node::Parallel(children)
    }

    fn normalized(self) -> Node {
        match self {
            Node::Leaf(i) => Node::Leaf(i),
            Node::Series(children) => Node::Series(flatten(children, true)),
            Node::Parallel(children) => Node::Parallel(flatten(children, false)),
        }
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Node::Leaf(i) => out.push(*i),
            Node::Series(ch) | Node::Parallel(ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    fn check_arity(&self) -> Result<()> {
        match self {
            Node::Leaf(_) => Ok(()),
            Node::Series(ch) | Node::Parallel(ch) => {
                if ch.len() < 2 {
                    return Err(Error::validation(
                        "series and parallel compositions need at least two children",
                    ));
                }
                ch.iter().try_for_each(Node::check_arity)
            }
        }
    }
}

fn flatten(children: Vec<Node>, series: bool) -> Vec<Node> {
    let mut out = Vec::with_capacity(children.len());
    for child in children {
        match child.normalized() {
            Node::Series(grand) if series => out.extend(grand),
            Node::Parallel(grand) if !series => out.extend(grand),
            other => out.push(other),
        }
    }
    out
}

/// Validated series-parallel tree over springs `1..=m`, kept in normal form
/// (nested compositions of the same kind are flattened, child order is
/// preserved).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Node", into = "Node")]
pub struct SpTree {
    root: Node,
    springs: usize,
}

impl SpTree {
    pub fn new(node: Node) -> Result<SpTree> {
        node.check_arity()?;
        let root = node.normalized();
        let mut leaves = Vec::new();
        root.collect_leaves(&mut leaves);
        let m = leaves.len();
        let mut seen = vec![false; m + 1];
        for &i in &leaves {
            if i == 0 || i > m {
                return Err(Error::validation(format!(
                    "spring indices must be exactly 1..={m}, found {i}"
                )));
            }
            if seen[i] {
                return Err(Error::validation(format!("duplicate spring index {i}")));
            }
            seen[i] = true;
        }
        Ok(SpTree { root, springs: m })
    }

    pub fn leaf() -> SpTree {
        SpTree {
            root: Node::Leaf(1),
            springs: 1,
        }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Number of springs `m`.
    pub fn spring_count(&self) -> usize {
        self.springs
    }
}

impl TryFrom<Node> for SpTree {
    type Error = Error;

    fn try_from(node: Node) -> Result<SpTree> {
        SpTree::new(node)
    }
}

impl From<SpTree> for Node {
    fn from(tree: SpTree) -> Node {
        tree.root
    }
}

pub fn spring_count(tree: &SpTree) -> usize {
    tree.spring_count()
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, children) = match self {
            Node::Leaf(i) => return write!(f, "{i}"),
            Node::Series(ch) => ('s', ch),
            Node::Parallel(ch) => ('p', ch),
        };
        write!(f, "{tag}(")?;
        for (k, child) in children.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{child}")?;
        }
        f.write_str(")")
    }
}

/// Prints the topology grammar, e.g. `s(1,p(s(2,3),4))`.
impl fmt::Display for SpTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl std::str::FromStr for SpTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpTree> {
        parse_topology(s)
    }
}

/// Index of one of the ten canonical four-spring arrangements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct CaseId(u8);

impl CaseId {
    pub const COUNT: u8 = 10;

    pub fn new(id: u8) -> Result<CaseId> {
        if (1..=Self::COUNT).contains(&id) {
            Ok(CaseId(id))
        } else {
            Err(Error::domain(format!(
                "case id must be in 1..=10, got {id}"
            )))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = CaseId> {
        (1..=Self::COUNT).map(CaseId)
    }

    /// Closed-form resistance of the arrangement in the limit variables.
    pub fn resistance_formula(self) -> &'static str {
        match self.0 {
            1 => "R = 1/c1 + 1/(c2 + c3) + 1/c4",
            2 => "R = 1/c1 + 1/c2 + 1/c3 + 1/c4",
            3 => "R = 1/(1/(1/c1 + 1/c2) + 1/(1/c3 + 1/c4))",
            4 => "R = 1/(1/(1/c1 + 1/c2 + 1/c3) + c4)",
            5 => "R = 1/(1/(1/c1 + 1/c2) + c3 + c4)",
            6 => "R = 1/c1 + 1/(c2 + c3 + c4)",
            7 => "R = 1/(c1 + c3) + 1/(c2 + c4)",
            8 => "R = 1/(c1 + c2 + c3 + c4)",
            9 => "R = 1/c1 + 1/(c4 + 1/(1/c2 + 1/c3))",
            10 => "R = 1/(c4 + 1/(1/c1 + 1/(c2 + c3)))",
            _ => unreachable!("CaseId is always in range"),
        }
    }
}

impl TryFrom<u8> for CaseId {
    type Error = Error;

    fn try_from(id: u8) -> Result<CaseId> {
        CaseId::new(id)
    }
}

impl From<CaseId> for u8 {
    fn from(id: CaseId) -> u8 {
        id.0
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn leaf(i: usize) -> Node {
    Node::Leaf(i)
}

fn s(children: Vec<Node>) -> Node {
    Node::Series(children)
}

fn p(children: Vec<Node>) -> Node {
    Node::Parallel(children)
}

/// The canonical tree of an arrangement. The catalogue is fixed by the
/// closed-form resistance of each case.
pub fn canonical_case(id: CaseId) -> SpTree {
    let node = match id.get() {
        1 => s(vec![leaf(1), p(vec![leaf(2), leaf(3)]), leaf(4)]),
        2 => s(vec![leaf(1), leaf(2), leaf(3), leaf(4)]),
        3 => p(vec![s(vec![leaf(1), leaf(2)]), s(vec![leaf(3), leaf(4)])]),
        4 => p(vec![s(vec![leaf(1), leaf(2), leaf(3)]), leaf(4)]),
        5 => p(vec![s(vec![leaf(1), leaf(2)]), leaf(3), leaf(4)]),
        6 => s(vec![leaf(1), p(vec![leaf(2), leaf(3), leaf(4)])]),
        7 => s(vec![p(vec![leaf(1), leaf(3)]), p(vec![leaf(2), leaf(4)])]),
        8 => p(vec![leaf(1), leaf(2), leaf(3), leaf(4)]),
        9 => s(vec![leaf(1), p(vec![s(vec![leaf(2), leaf(3)]), leaf(4)])]),
        10 => p(vec![s(vec![leaf(1), p(vec![leaf(2), leaf(3)])]), leaf(4)]),
        _ => unreachable!("CaseId is always in range"),
    };
    SpTree::new(node).expect("catalogue trees are valid")
}

/// Parses `T := INT | s(T,T[,T...]) | p(T,T[,T...])`, whitespace ignored.
pub fn parse_topology(expr: &str) -> Result<SpTree> {
    let mut parser = Parser {
        src: expr.as_bytes(),
        pos: 0,
    };
    let node = parser.term()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("trailing input"));
    }
    SpTree::new(node)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", byte as char)))
        }
    }

    fn term(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'0'..=b'9') => self.integer(),
            Some(tag @ (b's' | b'p')) => {
                self.pos += 1;
                self.expect(b'(')?;
                let mut children = vec![self.term()?];
                loop {
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.term()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected ',' or ')'")),
                    }
                }
                if children.len() < 2 {
                    return Err(self.error("composition needs at least two children"));
                }
                Ok(if tag == b's' {
                    Node::Series(children)
                } else {
                    Node::Parallel(children)
                })
            }
            Some(_) => Err(self.error("expected spring index, 's(' or 'p('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<Node> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse::<usize>()
            .map(Node::Leaf)
            .map_err(|_| Error::Syntax {
                offset: start,
                message: "spring index out of range".to_string(),
            })
    }
}

/// Random series-parallel tree over springs `1..=m`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, m: usize) -> SpTree {
    assert!(m >= 1, "a tree needs at least one spring");
    let mut indices: Vec<usize> = (1..=m).collect();
    indices.shuffle(rng);
    SpTree::new(random_node(rng, &indices)).expect("random trees are valid")
}

fn random_node<R: Rng + ?Sized>(rng: &mut R, indices: &[usize]) -> Node {
    if indices.len() == 1 {
        return Node::Leaf(indices[0]);
    }
    let parts = rng.gen_range(2..=indices.len().min(3));
    let mut cuts: Vec<usize> = (1..indices.len()).collect();
    cuts.shuffle(rng);
    let mut cuts = cuts[..parts - 1].to_vec();
    cuts.sort_unstable();
    let mut children = Vec::with_capacity(parts);
    let mut start = 0;
    for cut in cuts.into_iter().chain(std::iter::once(indices.len())) {
        children.push(random_node(rng, &indices[start..cut]));
        start = cut;
    }
    if rng.gen_bool(0.5) {
        Node::Series(children)
    } else {
        Node::Parallel(children)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(id: u8) -> SpTree {
        canonical_case(CaseId::new(id).unwrap())
    }

    #[test]
    fn catalogue_prints_expected_expressions() {
        let expected = [
            "s(1,p(2,3),4)",
            "s(1,2,3,4)",
            "p(s(1,2),s(3,4))",
            "p(s(1,2,3),4)",
            "p(s(1,2),3,4)",
            "s(1,p(2,3,4))",
            "s(p(1,3),p(2,4))",
            "p(1,2,3,4)",
            "s(1,p(s(2,3),4))",
            "p(s(1,p(2,3)),4)",
        ];
        for (id, want) in CaseId::all().zip(expected) {
            assert_eq!(canonical_case(id).to_string(), want, "case {id}");
            assert_eq!(canonical_case(id).spring_count(), 4);
        }
    }

    #[test]
    fn case_id_range() {
        assert!(CaseId::new(0).is_err());
        assert!(CaseId::new(11).is_err());
        assert_eq!(CaseId::all().count(), 10);
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_topology("s(1,p(s(2,3),4))").unwrap(), case(9));
        assert_eq!(parse_topology("p(1,2,3,4)").unwrap(), case(8));
        assert_eq!(parse_topology(" s( 1 , p(s(2, 3),4) ) ").unwrap(), case(9));
        assert_eq!(parse_topology("1").unwrap(), SpTree::leaf());
    }

    #[test]
    fn parse_flattens_nested_compositions() {
        assert_eq!(parse_topology("s(1,s(2,s(3,4)))").unwrap(), case(2));
        assert_eq!(parse_topology("p(p(1,2),p(3,4))").unwrap(), case(8));
    }

    #[test]
    fn duplicate_index_rejected() {
        assert!(matches!(
            parse_topology("s(1,1)"),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn non_contiguous_index_rejected() {
        assert!(matches!(
            parse_topology("s(1,3)"),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            parse_topology("p(0,1)"),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_topology("s(1,2") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_topology("s(1)") {
            Err(Error::Syntax { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_topology("q(1,2)") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_topology("s(1,2) x"),
            Err(Error::Syntax { offset: 7, .. })
        ));
        assert!(matches!(
            parse_topology(""),
            Err(Error::Syntax { offset: 0, .. })
        ));
    }

    #[test]
    fn unary_composition_rejected_by_builder() {
        let node = Node::Series(vec![Node::Leaf(1)]);
        assert!(SpTree::new(node).is_err());
    }

    #[test]
    fn spring_counts() {
        assert_eq!(case(9).spring_count(), 4);
        assert_eq!(SpTree::leaf().spring_count(), 1);
        assert_eq!(spring_count(&case(3)), 4);
    }

    #[test]
    fn serde_rejects_invalid_trees() {
        let node = Node::Series(vec![Node::Leaf(1), Node::Leaf(1)]);
        assert!(SpTree::try_from(node).is_err());
    }
}
