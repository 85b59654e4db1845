use crate::alphabet::Token;

use super::{LexiconBundle, VariantId};

#[derive(Debug, Clone, Default)]
struct Node {
    children: Vec<(u8, u32)>,
    variants: Vec<VariantId>,
}

impl Node {
    fn child(&self, byte: u8) -> Option<u32> {
        self.children
            .iter()
            .find(|(b, _)| *b == byte)
            .map(|&(_, n)| n)
    }
}

/// Suffix index over ending surfaces: a trie keyed on the surface bytes read
/// right to left, so one backwards walk over a token visits every ending
/// that is a suffix of it.
#[derive(Debug, Clone)]
pub struct EndingIndex {
    nodes: Vec<Node>,
}

/// A split of a token into `token[..split]` (stem) and an ending variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndingMatch {
    pub split: usize,
    pub variant: VariantId,
}

impl EndingIndex {
    pub fn build(bundle: &LexiconBundle) -> Self {
        let mut nodes = vec![Node::default()];
        for id in bundle.variant_ids() {
            let mut at = 0usize;
            for &byte in bundle.variant(id).surface.as_bytes().iter().rev() {
                at = match nodes[at].child(byte) {
                    Some(n) => n as usize,
                    None => {
                        let n = nodes.len();
                        nodes.push(Node::default());
                        nodes[at].children.push((byte, n as u32));
                        n
                    }
                };
            }
            nodes[at].variants.push(id);
        }
        for node in &mut nodes {
            node.children.sort_unstable();
        }
        EndingIndex { nodes }
    }

    /// Variants whose surface is exactly `surface`.
    pub fn lookup(&self, surface: &str) -> &[VariantId] {
        let mut at = 0usize;
        for &byte in surface.as_bytes().iter().rev() {
            match self.nodes[at].child(byte) {
                Some(n) => at = n as usize,
                None => return &[],
            }
        }
        if surface.is_empty() {
            return &[];
        }
        &self.nodes[at].variants
    }

    /// Every proper suffix of the token that is an ending surface and starts
    /// on a grapheme boundary, leaving a non-empty stem. Ordered by split
    /// position, then variant.
    pub fn match_endings(&self, token: &Token) -> Vec<EndingMatch> {
        let text = token.as_str().as_bytes();
        let mut out = Vec::new();
        let mut at = 0usize;
        for split in (1..text.len()).rev() {
            match self.nodes[at].child(text[split]) {
                Some(n) => at = n as usize,
                None => break,
            }
            let node = &self.nodes[at];
            if !node.variants.is_empty() && token.is_boundary(split) {
                out.extend(
                    node.variants
                        .iter()
                        .map(|&variant| EndingMatch { split, variant }),
                );
            }
        }
        out.sort_unstable();
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}
