use crate::lift::view_for;
use crate::planar::{is_forward, HalfEdge, HalfEdgeGraph, VertexId};
use crate::quad::Quadruple;
use crate::word::Letter;
use std::collections::VecDeque;
use std::fmt;

/// Label-preserving embedding of `K` into the covering graph of a host.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    pub vertex: Vec<VertexId>,
    pub half: Vec<HalfEdge>,
}

/// First half-edge of `K` that cannot be matched.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbedMismatch {
    pub half: HalfEdge,
    pub reason: String,
}

impl fmt::Display for EmbedMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "half-edge {}: {}", self.half, self.reason)
    }
}

/// Embeds `k` into `host` sending `k_root` to `host_root`, matching petal
/// labels, directions and rotation order. The traversal is deterministic,
/// so the embedding is unique when it exists.
pub fn rooted_embed(
    k: &HalfEdgeGraph,
    host: &Quadruple,
    k_root: VertexId,
    host_root: VertexId,
) -> Result<Embedding, EmbedMismatch> {
    let fail = |half, reason: String| EmbedMismatch { half, reason };
    let view = view_for(host, host_root, k.vertex_count()).map_err(|e| fail(0, e.to_string()))?;
    let hg = view.graph();
    let mut vertex = vec![usize::MAX; k.vertex_count()];
    let mut half = vec![usize::MAX; k.half_edge_count()];
    let mut used = std::collections::HashSet::new();
    vertex[k_root] = host_root;
    used.insert(host_root);
    let mut queue = VecDeque::from([k_root]);
    while let Some(x) = queue.pop_front() {
        let y = vertex[x];
        let mut slots = Vec::new();
        for &h in k.rotation(x) {
            let j = k.label(h).ok_or_else(|| fail(h, "unlabeled edge".into()))?;
            let l = Letter::new(j, !is_forward(h));
            let hh = view.step(y, l).ok_or_else(|| fail(h, format!("host vertex {} has no matching edge", y)))?;
            if half[h] != usize::MAX && half[h] != hh {
                return Err(fail(h, "edge already mapped elsewhere".into()));
            }
            half[h] = hh;
            half[h ^ 1] = hh ^ 1;
            slots.push(hg.slot(hh));
            let (tx, ty) = (k.target(h), hg.target(hh));
            if vertex[tx] == usize::MAX {
                if !used.insert(ty) {
                    return Err(fail(h, format!("host vertex {} is hit twice", ty)));
                }
                vertex[tx] = ty;
                queue.push_back(tx);
            } else if vertex[tx] != ty {
                return Err(fail(h, format!("wraps onto host vertex {} instead of {}", ty, vertex[tx])));
            }
        }
        let start = (0..slots.len()).min_by_key(|&i| slots[i]).unwrap_or(0);
        if (1..slots.len()).any(|i| slots[(start + i) % slots.len()] < slots[(start + i - 1) % slots.len()]) {
            return Err(fail(k.rotation(x)[0], format!("rotation order differs at vertex {}", x)));
        }
    }
    if let Some(x) = vertex.iter().position(|&y| y == usize::MAX) {
        return Err(fail(k.rotation(x).first().copied().unwrap_or(0), format!("vertex {} is unreachable", x)));
    }
    Ok(Embedding { vertex, half })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{approximate, ball};
    use crate::fixtures::{exp_chain, power_map};

    #[test]
    fn chain_ball_embeds_in_longer_cycle() {
        let q = exp_chain();
        let k1 = ball(&q.gamma, 1, 1).unwrap();
        let c7 = approximate(&q, 3).unwrap().quad;
        let e = rooted_embed(&k1, &c7, 0, c7.gamma.basepoint).unwrap();
        assert_eq!(e.vertex.len(), 3);
    }

    #[test]
    fn long_chain_wraps_in_short_cycle() {
        let q = exp_chain();
        let k4 = ball(&q.gamma, 1, 4).unwrap();
        assert!(rooted_embed(&k4, &power_map(3), 0, 0).is_err());
    }

    #[test]
    fn identity_embedding() {
        let q = power_map(4);
        let g = q.view(0).unwrap().graph().clone();
        let e = rooted_embed(&g, &q, 0, 0).unwrap();
        assert_eq!(e.vertex, vec![0, 1, 2, 3]);
        assert_eq!(e.half, (0..8).collect::<Vec<_>>());
    }
}
