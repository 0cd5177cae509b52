use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceKind {
    /// Empty bag, no children.
    Leaf,
    /// Bag is the child's bag plus `vertex`.
    Introduce { vertex: usize, child: usize },
    /// Bag is the child's bag minus `vertex`.
    Forget { vertex: usize, child: usize },
    /// Both children have the same bag as this node.
    Join { left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub bag: VertexSet,
    pub kind: NiceKind,
}

/// Rooted decomposition built from leaf, introduce, forget and join nodes.
///
/// Nodes are stored children first, so the root is the last node and a
/// forward pass visits every child before its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> isize {
        self.nodes
            .iter()
            .map(|x| x.bag.len() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    /// The same bags as a plain tree decomposition.
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            match node.kind {
                NiceKind::Leaf => {}
                NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                    edges.push((child, i))
                }
                NiceKind::Join { left, right } => {
                    edges.push((left, i));
                    edges.push((right, i));
                }
            }
        }
        TreeDecomposition {
            bags: self.nodes.iter().map(|x| x.bag.clone()).collect(),
            edges,
        }
    }

    /// Checks the node rules and the validity of the underlying decomposition.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (i, node) in self.nodes.iter().enumerate() {
            let ok = match &node.kind {
                NiceKind::Leaf => node.bag.is_empty(),
                NiceKind::Introduce { vertex, child } => {
                    *child < i
                        && !self.nodes[*child].bag.contains(*vertex)
                        && node.bag == self.nodes[*child].bag.union(&VertexSet::new(vec![*vertex]))
                }
                NiceKind::Forget { vertex, child } => {
                    *child < i
                        && self.nodes[*child].bag.contains(*vertex)
                        && node.bag
                            == self.nodes[*child]
                                .bag
                                .difference(&VertexSet::new(vec![*vertex]))
                }
                NiceKind::Join { left, right } => {
                    *left < i
                        && *right < i
                        && self.nodes[*left].bag == node.bag
                        && self.nodes[*right].bag == node.bag
                }
            };
            if !ok {
                return Err(Error::InvalidDecomposition(format!(
                    "nice node {i} breaks its rule"
                )));
            }
        }
        self.to_tree_decomposition().validate(g)
    }
}

/// Nice form of a valid decomposition, rooted at bag 0, which the root keeps.
///
/// Every original bag is reached from each child by forgetting, then
/// introducing, one vertex at a time in ascending order; children of a bag
/// are merged by a chain of joins. Width is unchanged.
pub fn nice_decomposition(td: &TreeDecomposition, g: &Graph) -> Result<NiceDecomposition> {
    td.validate(g)?;
    let k = td.bags.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    // Iterative post-order from bag 0.
    let mut parent = vec![usize::MAX; k];
    let mut post = Vec::with_capacity(k);
    let mut stack = vec![(0usize, false)];
    let mut seen = vec![false; k];
    seen[0] = true;
    while let Some((x, expanded)) = stack.pop() {
        if expanded {
            post.push(x);
            continue;
        }
        stack.push((x, true));
        for &y in adj[x].iter().rev() {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                stack.push((y, false));
            }
        }
    }
    let mut nodes: Vec<NiceNode> = Vec::new();
    let mut top = vec![usize::MAX; k];
    for &x in &post {
        let bag = &td.bags[x];
        let children: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == x).collect();
        let mut tops = Vec::new();
        if children.is_empty() {
            nodes.push(NiceNode {
                bag: VertexSet::empty(),
                kind: NiceKind::Leaf,
            });
            let leaf = nodes.len() - 1;
            tops.push(introduce_all(&mut nodes, leaf, bag));
        }
        for c in children {
            let mut cur = top[c];
            for v in td.bags[c].difference(bag).iter().copied() {
                let b = nodes[cur].bag.difference(&VertexSet::new(vec![v]));
                nodes.push(NiceNode {
                    bag: b,
                    kind: NiceKind::Forget {
                        vertex: v,
                        child: cur,
                    },
                });
                cur = nodes.len() - 1;
            }
            tops.push(introduce_all(&mut nodes, cur, bag));
        }
        let mut acc = tops[0];
        for &t in &tops[1..] {
            nodes.push(NiceNode {
                bag: bag.clone(),
                kind: NiceKind::Join {
                    left: acc,
                    right: t,
                },
            });
            acc = nodes.len() - 1;
        }
        top[x] = acc;
    }
    Ok(NiceDecomposition { nodes })
}

/// Introduces the vertices of `target` missing from node `from`, ascending; returns the last node.
fn introduce_all(nodes: &mut Vec<NiceNode>, from: usize, target: &VertexSet) -> usize {
    let mut cur = from;
    for v in target.difference(&nodes[from].bag).iter().copied() {
        let b = nodes[cur].bag.union(&VertexSet::new(vec![v]));
        nodes.push(NiceNode {
            bag: b,
            kind: NiceKind::Introduce {
                vertex: v,
                child: cur,
            },
        });
        cur = nodes.len() - 1;
    }
    cur
}
