//! Class membership with certificates.
//!
//! The pipeline: 4-hole test, cap test, clique-cutset decomposition, skeleton
//! extraction per atom, then a per-skeleton check. With no universal clique
//! the skeleton must be odd-signable (even-hole-free for the even-hole-free
//! class); with a universal clique it must be even-hole-free. The skeleton
//! checks use the exhaustive oracles, so large skeletons come back undecided.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::decomposition::{clique_cutset_tree, DecompositionTree};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::limits::Limits;
use crate::oracles::forbidden::find_four_hole;
use crate::oracles::{
    find_forbidden_induced, odd_signable_signing, ForbiddenKind, ForbiddenWitness, Signing,
};
use crate::skeleton::{
    extract_skeleton, reconstruct_atom, SkeletonDecomposition, SkeletonOutcome, SkeletonReject,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    /// (cap, 4-hole)-free odd-signable graphs.
    CapFourHoleOddSignable,
    /// (cap, even-hole)-free graphs.
    CapEvenHoleFree,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::CapFourHoleOddSignable => "cap-4hole-odd-signable",
            GraphClass::CapEvenHoleFree => "cap-even-hole-free",
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cap-4hole-odd-signable" => Ok(GraphClass::CapFourHoleOddSignable),
            "cap-even-hole-free" => Ok(GraphClass::CapEvenHoleFree),
            _ => Err(Error::InvalidParameter(format!("unknown class '{s}'"))),
        }
    }
}

/// Induced cap, if any.
///
/// For each edge `uv` and common neighbour `w`, a cap through `w` on `uv`
/// exists iff `u` and `v` are still connected, without the edge `uv`, once
/// `N[w] \ {u, v}` and all common neighbours of `u` and `v` are deleted. The
/// shortest such path closes with `uv` to a hole capped by `w`.
pub fn detect_cap_fast(g: &Graph) -> Option<ForbiddenWitness> {
    let n = g.n();
    let mut blocked = vec![false; n];
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for (u, v) in g.edges() {
        let common: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&x| g.has_edge(v, x))
            .collect();
        for &w in &common {
            blocked.iter_mut().for_each(|b| *b = false);
            for &x in g.neighbors(w).iter().chain(&common) {
                blocked[x] = true;
            }
            blocked[w] = true;
            blocked[u] = false;
            blocked[v] = false;
            // Breadth-first search from u to v avoiding the edge uv, neighbours in ascending order.
            prev.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            blocked[u] = true;
            queue.push_back(u);
            let mut found = false;
            while let Some(x) = queue.pop_front() {
                for &y in g.neighbors(x) {
                    if blocked[y] || (x == u && y == v) {
                        continue;
                    }
                    blocked[y] = true;
                    prev[y] = x;
                    if y == v {
                        found = true;
                        break;
                    }
                    queue.push_back(y);
                }
                if found {
                    break;
                }
            }
            if !found {
                continue;
            }
            let mut hole = vec![v];
            while *hole.last().unwrap() != u {
                hole.push(prev[*hole.last().unwrap()]);
            }
            hole.push(w);
            let witness = ForbiddenWitness::new(ForbiddenKind::Cap, hole);
            debug_assert!(witness.verify(g));
            if witness.verify(g) {
                return Some(witness);
            }
        }
    }
    None
}

/// Induced 4-hole, if any; exhaustive over nonadjacent pairs.
pub fn detect_4hole(g: &Graph) -> Option<ForbiddenWitness> {
    find_four_hole(g)
}

/// How a skeleton passed its check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkeletonCheck {
    /// Signing of the skeleton making every chordless cycle odd.
    OddSigning(Signing),
    /// The even-hole oracle searched the skeleton and found nothing.
    EvenHoleFree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomCertificate {
    Complete {
        atom: VertexSet,
    },
    Skeleton {
        atom: VertexSet,
        decomposition: SkeletonDecomposition,
        check: SkeletonCheck,
    },
}

impl AtomCertificate {
    pub fn atom(&self) -> &VertexSet {
        match self {
            AtomCertificate::Complete { atom } | AtomCertificate::Skeleton { atom, .. } => atom,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcceptCertificate {
    pub tree: DecompositionTree,
    pub atoms: Vec<AtomCertificate>,
}

impl AcceptCertificate {
    /// Glues the rebuilt atoms back together; equals the input graph for a sound certificate.
    pub fn reconstruct(&self, n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for cert in &self.atoms {
            let atom = cert.atom();
            match cert {
                AtomCertificate::Complete { .. } => b.add_clique(atom),
                AtomCertificate::Skeleton { decomposition, .. } => {
                    for (x, y) in reconstruct_atom(decomposition).edges() {
                        b.add_edge(atom[x], atom[y]);
                    }
                }
            }
        }
        b.build()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// An induced forbidden structure of `G`.
    Forbidden(ForbiddenWitness),
    /// An atom whose skeleton has a triangle or a clique cutset; ids are `G` vertices.
    Skeleton {
        atom: VertexSet,
        reason: SkeletonReject,
    },
    /// The odd-signing equations of an atom's skeleton are inconsistent, but
    /// no theta, prism or even wheel was located within the oracle budget.
    NotOddSignable { atom: VertexSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted(AcceptCertificate),
    Rejected(Rejection),
    /// An exhaustive skeleton check hit its guard.
    Undecided {
        atom: VertexSet,
        skeleton: Graph,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionVerdict {
    pub class: GraphClass,
    pub verdict: Verdict,
}

impl RecognitionVerdict {
    pub fn accepted(&self) -> bool {
        matches!(self.verdict, Verdict::Accepted(_))
    }

    pub fn rejected(&self) -> bool {
        matches!(self.verdict, Verdict::Rejected(_))
    }

    pub fn witness(&self) -> Option<&ForbiddenWitness> {
        match &self.verdict {
            Verdict::Rejected(Rejection::Forbidden(w)) => Some(w),
            _ => None,
        }
    }

    /// Re-validates the certificate against `g`.
    pub fn check(&self, g: &Graph) -> bool {
        match &self.verdict {
            Verdict::Accepted(cert) => {
                cert.tree.validate(g).is_ok()
                    && cert.reconstruct(g.n()) == g.clone().without_weights()
                    && cert.atoms.iter().all(|a| match a {
                        AtomCertificate::Skeleton {
                            decomposition,
                            check: SkeletonCheck::OddSigning(s),
                            ..
                        } => s.verify(&decomposition.skeleton),
                        _ => true,
                    })
            }
            Verdict::Rejected(Rejection::Forbidden(w)) => w.verify(g),
            Verdict::Rejected(Rejection::Skeleton {
                reason: SkeletonReject::Triangle(t),
                ..
            }) => g.is_clique(t),
            Verdict::Rejected(_) => true,
            Verdict::Undecided { .. } => true,
        }
    }

    /// JSON with 1-based vertex ids.
    pub fn to_json(&self) -> Value {
        let ids = |s: &[usize]| s.iter().map(|v| v + 1).collect::<Vec<_>>();
        let body = match &self.verdict {
            Verdict::Accepted(cert) => {
                let atoms: Vec<Value> = cert
                    .atoms
                    .iter()
                    .map(|a| match a {
                        AtomCertificate::Complete { atom } => json!({ "atom": ids(atom), "complete": true }),
                        AtomCertificate::Skeleton { atom, decomposition, check } => {
                            let mut sk = decomposition.to_json();
                            // Re-express clique members and the universal set in G's ids.
                            let lift = |s: &VertexSet| s.iter().map(|&i| atom[i] + 1).collect::<Vec<_>>();
                            sk["cliques"] = json!(decomposition
                                .cliques
                                .iter()
                                .enumerate()
                                .map(|(i, c)| ((i + 1).to_string(), json!(lift(c))))
                                .collect::<serde_json::Map<_, _>>());
                            sk["universal"] = json!(lift(&decomposition.universal));
                            let check = match check {
                                SkeletonCheck::OddSigning(s) => json!({
                                    "odd_signing": s.iter().map(|(u, v, x)| json!([u + 1, v + 1, x])).collect::<Vec<_>>()
                                }),
                                SkeletonCheck::EvenHoleFree => json!("even-hole-free"),
                            };
                            json!({ "atom": ids(atom), "skeleton": sk, "check": check })
                        }
                    })
                    .collect();
                json!({ "accepted": true, "decomposition": cert.tree.to_json(), "atoms": atoms })
            }
            Verdict::Rejected(r) => {
                let reason = match r {
                    Rejection::Forbidden(w) => {
                        json!({ "kind": w.kind.name(), "vertices": ids(&w.vertices) })
                    }
                    Rejection::Skeleton {
                        atom,
                        reason: SkeletonReject::Triangle(t),
                    } => {
                        json!({ "kind": "skeleton-triangle", "atom": ids(atom), "vertices": ids(t) })
                    }
                    Rejection::Skeleton {
                        atom,
                        reason: SkeletonReject::CliqueCutset(k),
                    } => {
                        json!({ "kind": "skeleton-clique-cutset", "atom": ids(atom), "vertices": ids(k) })
                    }
                    Rejection::NotOddSignable { atom } => {
                        json!({ "kind": "not-odd-signable", "atom": ids(atom) })
                    }
                };
                json!({ "accepted": false, "witness": reason })
            }
            Verdict::Undecided {
                atom,
                skeleton,
                reason,
            } => json!({
                "accepted": Value::Null,
                "undecided": reason,
                "atom": ids(atom),
                "skeleton": skeleton.to_text(),
            }),
        };
        let mut out = json!({ "class": self.class.name() });
        out.as_object_mut()
            .unwrap()
            .extend(body.as_object().unwrap().clone());
        out
    }
}

/// Decides membership of `g` in `class`, with a certificate either way.
///
/// Errors are returned only for guard failures outside the skeleton checks;
/// a skeleton too large for its oracle yields [`Verdict::Undecided`].
pub fn recognize(g: &Graph, class: GraphClass, limits: &Limits) -> Result<RecognitionVerdict> {
    let verdict = |verdict| Ok(RecognitionVerdict { class, verdict });
    if let Some(w) = detect_4hole(g) {
        return verdict(Verdict::Rejected(Rejection::Forbidden(w)));
    }
    if let Some(w) = detect_cap_fast(g) {
        return verdict(Verdict::Rejected(Rejection::Forbidden(w)));
    }
    let tree = clique_cutset_tree(g);
    let mut atoms = Vec::new();
    for atom in tree.atoms() {
        let (sub, _) = g.induced_subgraph(atom)?;
        let sd = match extract_skeleton(&sub) {
            SkeletonOutcome::Complete => {
                atoms.push(AtomCertificate::Complete { atom: atom.clone() });
                continue;
            }
            SkeletonOutcome::Reject(reason) => {
                let reason = match reason {
                    SkeletonReject::Triangle(t) => SkeletonReject::Triangle(t.map(|i| atom[i])),
                    SkeletonReject::CliqueCutset(k) => {
                        SkeletonReject::CliqueCutset(k.iter().map(|&i| atom[i]).collect())
                    }
                };
                return verdict(Verdict::Rejected(Rejection::Skeleton {
                    atom: atom.clone(),
                    reason,
                }));
            }
            SkeletonOutcome::Skeleton(sd) => sd,
        };
        // Skeleton vertex i is the atom vertex reps[i], which is G vertex atom[reps[i]].
        let to_g: Vec<usize> = sd.cliques.iter().map(|c| atom[c[0]]).collect();
        let f = &sd.skeleton;
        let undecided = |e: Error| Verdict::Undecided {
            atom: atom.clone(),
            skeleton: f.clone(),
            reason: e.to_string(),
        };
        let want_signing = class == GraphClass::CapFourHoleOddSignable && sd.universal.is_empty();
        let check = if want_signing {
            match odd_signable_signing(f, limits) {
                Ok(Some(s)) => SkeletonCheck::OddSigning(s),
                Ok(None) => {
                    for kind in [
                        ForbiddenKind::Theta,
                        ForbiddenKind::Prism,
                        ForbiddenKind::EvenWheel,
                    ] {
                        if let Ok(Some(w)) = find_forbidden_induced(f, kind, limits) {
                            return verdict(Verdict::Rejected(Rejection::Forbidden(
                                w.relabel(&to_g),
                            )));
                        }
                    }
                    return verdict(Verdict::Rejected(Rejection::NotOddSignable {
                        atom: atom.clone(),
                    }));
                }
                Err(e) if e.is_undecided() => return verdict(undecided(e)),
                Err(e) => return Err(e),
            }
        } else {
            match find_forbidden_induced(f, ForbiddenKind::EvenHole, limits) {
                Ok(None) => SkeletonCheck::EvenHoleFree,
                Ok(Some(w)) => {
                    let mut vs = w.relabel(&to_g).vertices;
                    // With a universal vertex the even hole becomes the rim of an even wheel.
                    let w = match sd.universal.first() {
                        Some(&u) => {
                            vs.push(atom[u]);
                            ForbiddenWitness::new(ForbiddenKind::EvenWheel, vs)
                        }
                        None => ForbiddenWitness::new(ForbiddenKind::EvenHole, vs),
                    };
                    return verdict(Verdict::Rejected(Rejection::Forbidden(w)));
                }
                Err(e) if e.is_undecided() => return verdict(undecided(e)),
                Err(e) => return Err(e),
            }
        };
        atoms.push(AtomCertificate::Skeleton {
            atom: atom.clone(),
            decomposition: sd,
            check,
        });
    }
    verdict(Verdict::Accepted(AcceptCertificate { tree, atoms }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn naive_cap(g: &Graph) -> bool {
        find_forbidden_induced(g, ForbiddenKind::Cap, &Limits::default())
            .unwrap()
            .is_some()
    }

    fn run(g: &Graph, class: GraphClass) -> RecognitionVerdict {
        let v = recognize(g, class, &Limits::default()).unwrap();
        assert!(v.check(g), "certificate fails re-check: {v:?}");
        v
    }

    #[test]
    fn cap_examples() {
        let w = detect_cap_fast(&named::house()).unwrap();
        assert_eq!(w.vertices.len(), 5);
        assert_eq!(*w.vertices.last().unwrap(), 4);
        assert!(detect_cap_fast(&named::hole(6).unwrap()).is_none());
        assert!(detect_cap_fast(&named::blown_five_hole(1).unwrap()).is_none());
    }

    #[test]
    fn cap_detector_matches_oracle() {
        for seed in 0..120 {
            let p = [0.2, 0.4, 0.6][seed as usize % 3];
            let g = named::gnp(11, p, seed).unwrap();
            let fast = detect_cap_fast(&g);
            assert_eq!(fast.is_some(), naive_cap(&g), "seed {seed}");
            if let Some(w) = fast {
                assert!(w.verify(&g));
            }
        }
    }

    #[test]
    fn four_hole_examples() {
        assert!(detect_4hole(&named::hole(4).unwrap()).is_some());
        assert!(detect_4hole(&named::cube()).is_some());
        // A chordal graph: a fan.
        let fan = named::path(6).unwrap().add_universal_clique(1);
        assert!(detect_4hole(&fan).is_none());
    }

    #[test]
    fn accepts_blown_hole_in_both_classes() {
        let g = named::blown_five_hole(1).unwrap();
        for class in [
            GraphClass::CapEvenHoleFree,
            GraphClass::CapFourHoleOddSignable,
        ] {
            let v = run(&g, class);
            assert!(v.accepted(), "{class}");
        }
    }

    #[test]
    fn rejections() {
        let even_wheel = named::wheel(4).unwrap();
        let v = run(&even_wheel, GraphClass::CapFourHoleOddSignable);
        assert_eq!(v.witness().unwrap().kind, ForbiddenKind::FourHole);
        let six_wheel = named::wheel(6).unwrap();
        for class in [
            GraphClass::CapEvenHoleFree,
            GraphClass::CapFourHoleOddSignable,
        ] {
            let v = run(&six_wheel, class);
            assert_eq!(v.witness().unwrap().kind, ForbiddenKind::EvenWheel);
        }
        assert_eq!(
            run(&named::house(), GraphClass::CapEvenHoleFree)
                .witness()
                .unwrap()
                .kind,
            ForbiddenKind::FourHole
        );
        // Six-hole: no universal vertex, skeleton is itself.
        let c6 = named::hole(6).unwrap();
        assert!(run(&c6, GraphClass::CapFourHoleOddSignable).accepted());
        assert_eq!(
            run(&c6, GraphClass::CapEvenHoleFree)
                .witness()
                .unwrap()
                .kind,
            ForbiddenKind::EvenHole
        );
    }

    #[test]
    fn theta_with_long_paths_is_rejected() {
        // Three paths of length 3 between 0 and 1: a theta with 6-holes.
        let g = Graph::from_edges(
            8,
            [
                (0, 2),
                (2, 3),
                (3, 1),
                (0, 4),
                (4, 5),
                (5, 1),
                (0, 6),
                (6, 7),
                (7, 1),
            ],
        )
        .unwrap();
        let v = run(&g, GraphClass::CapFourHoleOddSignable);
        assert_eq!(v.witness().unwrap().kind, ForbiddenKind::Theta);
    }

    #[test]
    fn undecided_beyond_the_guard() {
        let g = named::hole(9).unwrap();
        let v = recognize(&g, GraphClass::CapEvenHoleFree, &Limits::uniform(5)).unwrap();
        assert!(matches!(v.verdict, Verdict::Undecided { .. }));
    }

    #[test]
    fn class_names() {
        for c in [
            GraphClass::CapEvenHoleFree,
            GraphClass::CapFourHoleOddSignable,
        ] {
            assert_eq!(c.name().parse::<GraphClass>().unwrap(), c);
        }
    }
}
