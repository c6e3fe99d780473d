//! Combinatorial knot/link diagrams: ordered passage sequences per
//! component with crossing signs. Supports PD-code text, Gauss codes,
//! crossing switches, oriented smoothing, and removal of trivially
//! reducible crossings (kinks and empty bigons).

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// One passage of a strand through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

/// A planar diagram. `strands[c]` lists the passages of component `c` in
/// order; every crossing appears exactly twice, once over and once under.
/// `sign[x]` is the usual crossing sign (+1 when the under strand crosses
/// the over strand from its right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub strands: Vec<Vec<Passage>>,
    pub sign: Vec<i8>,
}

impl Diagram {
    pub fn unknot() -> Diagram {
        Diagram { strands: vec![vec![]], sign: vec![] }
    }

    pub fn crossing_count(&self) -> usize {
        self.sign.len()
    }

    pub fn component_count(&self) -> usize {
        self.strands.len()
    }

    pub fn writhe(&self) -> i64 {
        self.sign.iter().map(|s| *s as i64).sum()
    }

    /// Position of both passages of each crossing: (component, index), the
    /// over one and the under one.
    fn passage_positions(&self) -> Result<Vec<((usize, usize), (usize, usize))>> {
        let n = self.crossing_count();
        let mut over = vec![None; n];
        let mut under = vec![None; n];
        for (c, strand) in self.strands.iter().enumerate() {
            for (i, p) in strand.iter().enumerate() {
                let slot = if p.over { &mut over } else { &mut under };
                if slot[p.crossing].is_some() {
                    return Err(Error::internal(format!(
                        "crossing {} passed twice on the same side",
                        p.crossing
                    )));
                }
                slot[p.crossing] = Some((c, i));
            }
        }
        (0..n)
            .map(|x| match (over[x], under[x]) {
                (Some(o), Some(u)) => Ok((o, u)),
                _ => Err(Error::internal(format!("crossing {x} incomplete"))),
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.passage_positions().map(|_| ())
    }

    /// Swap over and under at one crossing.
    pub fn switch_crossing(&self, id: usize) -> Result<Diagram> {
        if id >= self.crossing_count() {
            return Err(Error::NoSuchCrossing(id));
        }
        let mut out = self.clone();
        for strand in &mut out.strands {
            for p in strand.iter_mut() {
                if p.crossing == id {
                    p.over = !p.over;
                }
            }
        }
        out.sign[id] = -out.sign[id];
        Ok(out)
    }

    /// Oriented smoothing: remove the crossing and reconnect respecting
    /// orientation. Component count changes by one.
    pub fn smooth_crossing(&self, id: usize) -> Result<Diagram> {
        if id >= self.crossing_count() {
            return Err(Error::NoSuchCrossing(id));
        }
        let pos = self.passage_positions()?;
        let ((c1, i1), (c2, i2)) = pos[id];
        let mut strands: Vec<Vec<Passage>> = Vec::new();
        if c1 == c2 {
            // split one component into two
            let s = &self.strands[c1];
            let (a, b) = if i1 < i2 { (i1, i2) } else { (i2, i1) };
            let mut first: Vec<Passage> = Vec::new();
            first.extend_from_slice(&s[..a]);
            first.extend_from_slice(&s[b + 1..]);
            let middle: Vec<Passage> = s[a + 1..b].to_vec();
            for (k, strand) in self.strands.iter().enumerate() {
                if k == c1 {
                    strands.push(first.clone());
                    strands.push(middle.clone());
                } else {
                    strands.push(strand.clone());
                }
            }
        } else {
            // merge two components
            let s1 = &self.strands[c1];
            let s2 = &self.strands[c2];
            let mut merged: Vec<Passage> = Vec::new();
            merged.extend_from_slice(&s1[..i1]);
            merged.extend_from_slice(&s2[i2 + 1..]);
            merged.extend_from_slice(&s2[..i2]);
            merged.extend_from_slice(&s1[i1 + 1..]);
            for (k, strand) in self.strands.iter().enumerate() {
                if k == c1 {
                    strands.push(merged.clone());
                } else if k != c2 {
                    strands.push(strand.clone());
                }
            }
        }
        // renumber crossings densely
        Ok(renumber(strands, &self.sign, Some(id)))
    }

    /// Remove kinks (a crossing whose two passages are consecutive) and
    /// empty bigons (two consecutive passages shared by two strands with one
    /// strand over at both crossings) until none remain.
    pub fn reduce(&self) -> Diagram {
        let mut cur = self.clone();
        loop {
            if let Some(next) = reduce_kink_once(&cur) {
                cur = next;
                continue;
            }
            if let Some(next) = reduce_bigon_once(&cur) {
                cur = next;
                continue;
            }
            return cur;
        }
    }

    /// Signed Gauss code, one token per passage: `O3+` means passing over
    /// crossing 3, which is positive.
    pub fn gauss_text(&self) -> String {
        let mut out = String::new();
        for (c, strand) in self.strands.iter().enumerate() {
            if c > 0 {
                out.push('\n');
            }
            if strand.is_empty() {
                out.push_str("(unknotted component)");
                continue;
            }
            for (i, p) in strand.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push(if p.over { 'O' } else { 'U' });
                out.push_str(&(p.crossing + 1).to_string());
                out.push(if self.sign[p.crossing] > 0 { '+' } else { '-' });
            }
        }
        out
    }

    /// Edge labels: the edge arriving at passage `(c, i)` and the one
    /// leaving it, numbered 1.. per component in traversal order.
    fn edge_labels(&self) -> Vec<Vec<(usize, usize)>> {
        let mut base = 0usize;
        let mut out = Vec::new();
        for strand in &self.strands {
            let m = strand.len();
            let labels: Vec<(usize, usize)> = (0..m)
                .map(|i| {
                    let incoming = base + (i + m - 1) % m + 1;
                    let outgoing = base + i + 1;
                    (incoming, outgoing)
                })
                .collect();
            base += m;
            out.push(labels);
        }
        out
    }

    /// PD-code text: one `X[a,b,c,d]` line per crossing, labels listed
    /// counterclockwise starting from the incoming under-strand edge.
    pub fn pd_text(&self) -> String {
        let labels = self.edge_labels();
        let pos = self.passage_positions().expect("valid diagram");
        let mut lines = Vec::new();
        for x in 0..self.crossing_count() {
            let ((oc, oi), (uc, ui)) = pos[x];
            let (a, c) = labels[uc][ui];
            let (o_in, o_out) = labels[oc][oi];
            let (b, d) = if self.sign[x] > 0 { (o_out, o_in) } else { (o_in, o_out) };
            lines.push(format!("X[{a},{b},{c},{d}]"));
        }
        if lines.is_empty() {
            lines.push("(unknot: no crossings)".to_string());
        }
        lines.join("\n")
    }

    /// Parse PD-code text as emitted by [`Diagram::pd_text`]. Lines may end
    /// with an optional `+`/`-` sign hint; blank lines and `#` comments are
    /// ignored.
    pub fn from_pd_text(text: &str) -> Result<Diagram> {
        let mut tuples: Vec<[usize; 4]> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("(unknot") {
                continue;
            }
            let inner = line
                .strip_prefix("X[")
                .and_then(|s| s.split(']').next())
                .ok_or(Error::Parse { line: lineno + 1, msg: "expected X[a,b,c,d]".into() })?;
            let parts: Vec<&str> = inner.split(',').map(|s| s.trim()).collect();
            if parts.len() != 4 {
                return Err(Error::Parse { line: lineno + 1, msg: "expected four labels".into() });
            }
            let mut tup = [0usize; 4];
            for (k, p) in parts.iter().enumerate() {
                tup[k] = p.parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("bad label {p}"),
                })?;
            }
            tuples.push(tup);
        }
        diagram_from_tuples(&tuples)
    }
}

fn renumber(strands: Vec<Vec<Passage>>, old_sign: &[i8], removed: Option<usize>) -> Diagram {
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    for strand in &strands {
        for p in strand {
            let next = map.len();
            map.entry(p.crossing).or_insert(next);
        }
    }
    let mut sign = vec![0i8; map.len()];
    for (old, new) in &map {
        debug_assert!(Some(*old) != removed);
        sign[*new] = old_sign[*old];
    }
    let strands = strands
        .into_iter()
        .map(|s| {
            s.into_iter()
                .map(|p| Passage { crossing: map[&p.crossing], over: p.over })
                .collect()
        })
        .collect();
    Diagram { strands, sign }
}

fn reduce_kink_once(d: &Diagram) -> Option<Diagram> {
    for (c, strand) in d.strands.iter().enumerate() {
        let m = strand.len();
        for i in 0..m {
            let j = (i + 1) % m;
            if i != j && strand[i].crossing == strand[j].crossing {
                let mut strands = d.strands.clone();
                let removed = strand[i].crossing;
                if j > i {
                    strands[c].drain(i..=j);
                } else {
                    strands[c].remove(i);
                    strands[c].remove(j);
                }
                return Some(renumber(strands, &d.sign, Some(removed)));
            }
        }
    }
    None
}

fn reduce_bigon_once(d: &Diagram) -> Option<Diagram> {
    // find passages (X then Y) adjacent on one strand with X,Y over there,
    // and (Y then X) adjacent on another with both under
    let mut over_pairs: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (c, strand) in d.strands.iter().enumerate() {
        let m = strand.len();
        for i in 0..m {
            let j = (i + 1) % m;
            if m < 2 || (i == j) {
                continue;
            }
            let (p, q) = (strand[i], strand[j]);
            if p.crossing == q.crossing {
                continue;
            }
            if p.over && q.over {
                over_pairs.insert((p.crossing, q.crossing), (c, i));
            }
        }
    }
    for strand in &d.strands {
        let m = strand.len();
        for i in 0..m {
            let j = (i + 1) % m;
            if m < 2 || i == j {
                continue;
            }
            let (p, q) = (strand[i], strand[j]);
            if p.crossing == q.crossing || p.over || q.over {
                continue;
            }
            // under pair (p.crossing, q.crossing); need over pair (q.crossing, p.crossing)
            if over_pairs.contains_key(&(q.crossing, p.crossing))
                && d.sign[p.crossing] != d.sign[q.crossing]
            {
                let (x, y) = (p.crossing, q.crossing);
                let mut strands = d.strands.clone();
                for s in &mut strands {
                    s.retain(|pp| pp.crossing != x && pp.crossing != y);
                }
                return Some(renumber(strands, &d.sign, Some(x)));
            }
        }
    }
    None
}

/// Reconstruct a diagram from PD tuples, resolving over-strand direction by
/// edge-numbering succession.
fn diagram_from_tuples(tuples: &[[usize; 4]]) -> Result<Diagram> {
    if tuples.is_empty() {
        return Ok(Diagram::unknot());
    }
    let n = tuples.len();
    let edge_count = 2 * n;
    // successor map: edge -> edge, plus passage metadata keyed by edge
    // Each edge label appears exactly twice overall.
    let mut uses: BTreeMap<usize, usize> = BTreeMap::new();
    for t in tuples {
        for e in t {
            *uses.entry(*e).or_insert(0) += 1;
        }
    }
    if uses.len() != edge_count || uses.values().any(|c| *c != 2) {
        return Err(Error::Parse { line: 0, msg: "edge labels must each appear twice".into() });
    }

    // under strand: a -> c. Over strand: of {b, d}, the incoming edge is
    // the one whose numeric successor (with wraparound inside a component)
    // equals the other.
    let mut succ: BTreeMap<usize, (usize, usize, bool)> = BTreeMap::new(); // edge -> (next edge, crossing, over?)
    let mut sign = vec![0i8; n];
    for (x, t) in tuples.iter().enumerate() {
        let [a, b, c, d] = *t;
        succ.insert(a, (c, x, false));
        // +1 when the over strand enters at slot d
        let (o_in, o_out, s) = if d == b + 1 {
            (b, d, -1)
        } else if b == d + 1 {
            (d, b, 1)
        } else if b > d {
            // wraparound: the larger label ends its component
            (b, d, -1)
        } else {
            (d, b, 1)
        };
        succ.insert(o_in, (o_out, x, true));
        sign[x] = s;
    }
    if succ.len() != edge_count {
        return Err(Error::Parse { line: 0, msg: "inconsistent over-strand labels".into() });
    }

    // walk components: passages in order, a passage sits at the end of its
    // incoming edge
    let mut visited: BTreeMap<usize, bool> = succ.keys().map(|e| (*e, false)).collect();
    let mut strands = Vec::new();
    let edges_sorted: Vec<usize> = succ.keys().copied().collect();
    for start in edges_sorted {
        if visited[&start] {
            continue;
        }
        let mut strand = Vec::new();
        let mut e = start;
        loop {
            visited.insert(e, true);
            let (next, x, over) = succ[&e];
            strand.push(Passage { crossing: x, over });
            e = next;
            if e == start {
                break;
            }
        }
        strands.push(strand);
    }

    let d = Diagram { strands, sign };
    d.validate()?;
    Ok(d)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_roundtrip() {
        let t = fixtures::trefoil();
        assert_eq!(t.component_count(), 1);
        assert_eq!(t.crossing_count(), 3);
        assert_eq!(t.writhe(), -3);
        let text = t.pd_text();
        let t2 = Diagram::from_pd_text(&text).unwrap();
        assert_eq!(t2.crossing_count(), 3);
        assert_eq!(t2.writhe(), -3);
    }

    #[test]
    fn kink_reduction() {
        // unknot with one kink: single crossing, passages adjacent
        let d = Diagram {
            strands: vec![vec![
                Passage { crossing: 0, over: true },
                Passage { crossing: 0, over: false },
            ]],
            sign: vec![1],
        };
        let r = d.reduce();
        assert_eq!(r.crossing_count(), 0);
    }

    #[test]
    fn bigon_reduction() {
        // two strands crossing twice, one over both times (a reducible R2)
        let d = Diagram {
            strands: vec![
                vec![Passage { crossing: 0, over: true }, Passage { crossing: 1, over: true }],
                vec![Passage { crossing: 1, over: false }, Passage { crossing: 0, over: false }],
            ],
            sign: vec![1, -1],
        };
        let r = d.reduce();
        assert_eq!(r.crossing_count(), 0);
        // a clasp (same sign pattern) must NOT reduce
        let clasp = fixtures::hopf_link(true);
        assert_eq!(clasp.reduce().crossing_count(), 2);
    }

    #[test]
    fn smoothing_changes_component_count() {
        let t = fixtures::trefoil();
        let s = t.smooth_crossing(0).unwrap();
        assert_eq!(s.component_count(), 2);
        let h = fixtures::hopf_link(true);
        let m = h.smooth_crossing(0).unwrap();
        assert_eq!(m.component_count(), 1);
    }

    #[test]
    fn switch_is_involutive() {
        let t = fixtures::trefoil();
        let s = t.switch_crossing(1).unwrap();
        assert_eq!(s.sign[1], -t.sign[1]);
        assert_eq!(s.switch_crossing(1).unwrap(), t);
    }
}
