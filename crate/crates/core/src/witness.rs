//! Explicit arc chains joining `E_0*`-related axis points.
//!
//! The construction follows the induction on the agreement level `n`. If
//! `a F_{n+1} c` and the two sequences differ at index `n`, let `p` be the one
//! with a `1` there and `q` the other. Writing `t = (p_{n+1}, p_{n+2}, ...)`:
//!
//! ```text
//! p ≈ 0ⁿ1·t        (recursion at level n)
//!   ≈ 0ⁿ1·t̄        (one arc at level n+1)
//!   ≈ 1ⁿ0·t        (one arc at level 0)
//!   ≈ q            (recursion at level n)
//! ```
//!
//! Complement-mode pairs are joined to `b̄` in equal mode and then take one
//! level-0 arc from `b̄` to `b`.

use serde::{Deserialize, Serialize};

use crate::binseq::{e0star, f_n, witness_level, BinSeq, Mode};
use crate::continuum::{make_arc, Arc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub from: BinSeq,
    pub to: BinSeq,
    pub via: Vec<BinSeq>,
    pub arcs: Vec<Arc>,
}

impl PathWitness {
    /// Chain starting at `from`; `via` is recovered by walking the arcs.
    pub fn from_arcs(from: BinSeq, arcs: Vec<Arc>) -> Result<Self> {
        let mut via = Vec::with_capacity(arcs.len() + 1);
        via.push(from.clone());
        for (j, arc) in arcs.iter().enumerate() {
            let here = via.last().expect("via is nonempty");
            let next = arc
                .other_end(here)
                .ok_or_else(|| Error::InvalidWitness(format!("arc {j} does not touch {here}")))?;
            via.push(next.clone());
        }
        let to = via.last().expect("via is nonempty").clone();
        Ok(Self {
            from,
            to,
            via,
            arcs,
        })
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn max_level(&self) -> Option<usize> {
        self.arcs.iter().map(Arc::level).max()
    }

    /// One `SEQ --γ^k--> SEQ` line per hop; a bare `SEQ` for the empty chain.
    pub fn to_text(&self) -> String {
        if self.arcs.is_empty() {
            return format!("{}\n", self.from);
        }
        self.arcs
            .iter()
            .zip(self.via.windows(2))
            .map(|(arc, pair)| format!("{} --γ^{}--> {}\n", pair[0], arc.level(), pair[1]))
            .collect()
    }
}

/// A chain from `a` to `b`, or `None` when they are not `E_0*`-related.
pub fn synthesize(a: &BinSeq, b: &BinSeq) -> Option<PathWitness> {
    let level = witness_level(a, b)?;
    let arcs = match level.mode {
        Mode::Equal => chain_equal(level.n, a, b),
        Mode::Complement => {
            let target = b.complement();
            let mut arcs = chain_equal(level.n, a, &target);
            arcs.push(make_arc(0, &target).expect("level-0 arcs always exist"));
            arcs
        }
    };
    let w = PathWitness::from_arcs(a.clone(), arcs).expect("synthesized chain is connected");
    debug_assert_eq!(&w.to, b);
    Some(w)
}

/// Arcs from `a` to `c` given `a F_n c`.
fn chain_equal(n: usize, a: &BinSeq, c: &BinSeq) -> Vec<Arc> {
    debug_assert!(f_n(a, c, n));
    let Some(idx) = (0..n).rev().find(|&i| a.get(i) != c.get(i)) else {
        return Vec::new();
    };
    let (p, q, reversed) = if a.get(idx) {
        (a, c, false)
    } else {
        (c, a, true)
    };

    let mut head = vec![false; idx + 1];
    head[idx] = true;
    let lifted = p.with_head(&head);
    let flipped = lifted.hat().expect("lifted sequence has level idx+1");
    let landing = flipped.complement();

    let mut arcs = chain_equal(idx, p, &lifted);
    arcs.push(make_arc(idx + 1, &lifted).expect("level matches by construction"));
    arcs.push(make_arc(0, &flipped).expect("level-0 arcs always exist"));
    arcs.extend(chain_equal(idx, &landing, q));
    if reversed {
        arcs.reverse();
    }
    arcs
}

/// Checks every structural invariant of a witness.
pub fn verify(w: &PathWitness) -> bool {
    if w.via.len() != w.arcs.len() + 1
        || w.via.first() != Some(&w.from)
        || w.via.last() != Some(&w.to)
    {
        return false;
    }
    let chained = w
        .arcs
        .iter()
        .zip(w.via.windows(2))
        .all(|(arc, pair)| arc.is_valid() && arc.other_end(&pair[0]) == Some(&pair[1]));
    chained && e0star(&w.from, &w.to)
}

/// Cancels arcs that are immediately traversed back, until none remain.
pub fn simplify(w: &PathWitness) -> Result<PathWitness> {
    if !verify(w) {
        return Err(Error::InvalidWitness("input does not verify".into()));
    }
    let mut kept: Vec<&Arc> = Vec::with_capacity(w.arcs.len());
    for arc in &w.arcs {
        if kept.last() == Some(&arc) {
            kept.pop();
        } else {
            kept.push(arc);
        }
    }
    PathWitness::from_arcs(w.from.clone(), kept.into_iter().cloned().collect())
}
