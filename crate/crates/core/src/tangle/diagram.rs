//! Planar diagrams of tangle closures.
//!
//! A word is drawn as a network of crossings. Each crossing has four ports
//! numbered counterclockwise from the bottom left (`BL=0, BR=1, TR=2, TL=3`);
//! the two strands through a crossing join port `s` to port `s+2`. The
//! integral tangle `m > 0` stacks `m` crossings whose `BL–TR` strand is on
//! top, so with both strands oriented upward every crossing is positive;
//! `m < 0` uses the mirror crossing. Rotation permutes the four boundary
//! endpoints and composition glues them with wires. The closure joins each
//! top endpoint to the bottom endpoint on the same side, around the right.
//!
//! Arcs are the Fox arcs: maximal strands running from one undercrossing to
//! the next, so the over strand of a traced crossing has
//! `over_in == over_out`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::word::TangleWord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Crossing {
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

/// Crossing/arc structure of a closed diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    arcs: Vec<usize>,
    crossings: Vec<Crossing>,
    components: Vec<Vec<usize>>,
    writhe: Option<i64>,
}

impl PlanarDiagram {
    /// Validates arc references and signs, and derives the component
    /// partition: arcs meeting at an undercrossing (or the two halves of an
    /// over strand) lie on the same component.
    pub fn new(arcs: Vec<usize>, crossings: Vec<Crossing>) -> Result<Self> {
        let mut position = HashMap::with_capacity(arcs.len());
        for (i, &a) in arcs.iter().enumerate() {
            if position.insert(a, i).is_some() {
                return Err(Error::Schema(format!("duplicate arc id {a}")));
            }
        }
        let mut uf = UnionFind::new(arcs.len());
        for (i, c) in crossings.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::Schema(format!("crossing {i}: sign must be ±1")));
            }
            let idx = |a: usize| {
                position
                    .get(&a)
                    .copied()
                    .ok_or_else(|| Error::Schema(format!("crossing {i}: unknown arc {a}")))
            };
            uf.union(idx(c.under_in)?, idx(c.under_out)?);
            uf.union(idx(c.over_in)?, idx(c.over_out)?);
        }
        let mut class_of = HashMap::new();
        let mut components: Vec<Vec<usize>> = Vec::new();
        for (i, &a) in arcs.iter().enumerate() {
            let root = uf.find(i);
            let k = *class_of.entry(root).or_insert_with(|| {
                components.push(Vec::new());
                components.len() - 1
            });
            components[k].push(a);
        }
        let writhe = (components.len() == 1).then(|| crossings.iter().map(|c| c.sign as i64).sum());
        Ok(PlanarDiagram {
            arcs,
            crossings,
            components,
            writhe,
        })
    }

    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    /// Sum of crossing signs; defined for one-component diagrams only.
    pub fn writhe(&self) -> Option<i64> {
        self.writhe
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn to_pd_json(&self) -> String {
        serde_json::to_string(&PdJson {
            n_components: self.n_components(),
            writhe: self.writhe,
            arcs: self.arcs.clone(),
            crossings: self.crossings.clone(),
        })
        .expect("PD serialization")
    }

    pub fn from_pd_json(text: &str) -> Result<Self> {
        let raw: PdJson = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let d = PlanarDiagram::new(raw.arcs, raw.crossings)?;
        if d.n_components() != raw.n_components {
            return Err(Error::Schema(format!(
                "n_components is {} but the crossings give {}",
                raw.n_components,
                d.n_components()
            )));
        }
        if d.writhe != raw.writhe {
            return Err(Error::Schema(format!(
                "writhe {:?} does not match the crossings ({:?})",
                raw.writhe, d.writhe
            )));
        }
        Ok(d)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdJson {
    n_components: usize,
    writhe: Option<i64>,
    arcs: Vec<usize>,
    crossings: Vec<Crossing>,
}

/// Serializes `d` to the PD JSON schema.
pub fn to_pd_json(d: &PlanarDiagram) -> String {
    d.to_pd_json()
}

pub fn from_pd_json(text: &str) -> Result<PlanarDiagram> {
    PlanarDiagram::from_pd_json(text)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Node {
    /// `4·crossing + slot`.
    Port(usize),
    Point(usize),
}

/// Boundary endpoints in counterclockwise order `[SW, SE, NE, NW]`.
type Ends = [Node; 4];

const SW: usize = 0;
const SE: usize = 1;
const NE: usize = 2;
const NW: usize = 3;

#[derive(Default)]
struct Builder {
    /// Per crossing: the slot parity (0 or 1) of the over strand.
    over_parity: Vec<usize>,
    wires: Vec<(Node, Node)>,
    points: usize,
}

impl Builder {
    fn point(&mut self) -> Node {
        self.points += 1;
        Node::Point(self.points - 1)
    }

    fn build(&mut self, w: &TangleWord) -> Ends {
        match w {
            TangleWord::Integral(0) => {
                let e = [self.point(), self.point(), self.point(), self.point()];
                self.wires.push((e[SW], e[NW]));
                self.wires.push((e[SE], e[NE]));
                e
            }
            &TangleWord::Integral(m) => {
                let first = self.over_parity.len();
                let parity = if m > 0 { 0 } else { 1 };
                let count = m.unsigned_abs() as usize;
                self.over_parity.extend(std::iter::repeat_n(parity, count));
                for c in first..first + count - 1 {
                    self.wires
                        .push((Node::Port(4 * c + 3), Node::Port(4 * (c + 1))));
                    self.wires
                        .push((Node::Port(4 * c + 2), Node::Port(4 * (c + 1) + 1)));
                }
                let last = first + count - 1;
                [
                    Node::Port(4 * first),
                    Node::Port(4 * first + 1),
                    Node::Port(4 * last + 2),
                    Node::Port(4 * last + 3),
                ]
            }
            TangleWord::Rot(inner) => {
                let e = self.build(inner);
                // counterclockwise: NW→SW, SW→SE, SE→NE, NE→NW
                [e[NW], e[SW], e[SE], e[NE]]
            }
            TangleWord::VComp(upper, lower) => {
                let b = self.build(lower);
                let a = self.build(upper);
                self.wires.push((b[NW], a[SW]));
                self.wires.push((b[NE], a[SE]));
                [b[SW], b[SE], a[NE], a[NW]]
            }
        }
    }
}

/// Slot positions on the unit square, counterclockwise from bottom left.
const SLOT_POS: [(i64, i64); 4] = [(-1, -1), (1, -1), (1, 1), (-1, 1)];

fn crossing_sign(over_entry: usize, under_entry: usize) -> i8 {
    // a strand entering at slot s travels along -pos(s)
    let (o, u) = (SLOT_POS[over_entry], SLOT_POS[under_entry]);
    (o.0 * u.1 - o.1 * u.0).signum() as i8
}

/// Traces the closure of `w`.
pub fn closure_trace(w: &TangleWord) -> PlanarDiagram {
    let mut b = Builder::default();
    let ends = b.build(w);
    b.wires.push((ends[NE], ends[SE]));
    b.wires.push((ends[NW], ends[SW]));

    let n_cross = b.over_parity.len();
    let n_ports = 4 * n_cross;
    let mut port_wire = vec![usize::MAX; n_ports];
    let mut point_wires: Vec<Vec<usize>> = vec![Vec::new(); b.points];
    for (i, &(x, y)) in b.wires.iter().enumerate() {
        for node in [x, y] {
            match node {
                Node::Port(p) => port_wire[p] = i,
                Node::Point(q) => point_wires[q].push(i),
            }
        }
    }
    let other_end = |wire: usize, from: Node| {
        let (x, y) = b.wires[wire];
        if x == from {
            y
        } else {
            x
        }
    };

    // segments: wire chains between two ports
    let mut wire_seen = vec![false; b.wires.len()];
    let mut seg_of_port = vec![usize::MAX; n_ports];
    let mut port_partner = vec![usize::MAX; n_ports];
    let mut n_segs = 0;
    for p in 0..n_ports {
        if seg_of_port[p] != usize::MAX {
            continue;
        }
        let (mut wire, mut node) = (port_wire[p], Node::Port(p));
        loop {
            wire_seen[wire] = true;
            node = other_end(wire, node);
            match node {
                Node::Port(q) => {
                    seg_of_port[p] = n_segs;
                    seg_of_port[q] = n_segs;
                    port_partner[p] = q;
                    port_partner[q] = p;
                    n_segs += 1;
                    break;
                }
                Node::Point(q) => {
                    let ws = &point_wires[q];
                    wire = if ws[0] == wire { ws[1] } else { ws[0] };
                }
            }
        }
    }
    // crossing-free loops
    let mut free_loops = 0;
    for start in 0..b.wires.len() {
        if wire_seen[start] {
            continue;
        }
        free_loops += 1;
        let (mut wire, mut node) = (start, b.wires[start].0);
        while !wire_seen[wire] {
            wire_seen[wire] = true;
            node = other_end(wire, node);
            let Node::Point(q) = node else {
                unreachable!("port on a crossing-free loop")
            };
            let ws = &point_wires[q];
            wire = if ws[0] == wire { ws[1] } else { ws[0] };
        }
    }

    // Fox arcs: segments glued across over strands
    let mut uf = UnionFind::new(n_segs);
    for (c, &par) in b.over_parity.iter().enumerate() {
        uf.union(seg_of_port[4 * c + par], seg_of_port[4 * c + par + 2]);
    }

    // orient each component by walking it; number arcs in order of appearance
    let mut arc_id: HashMap<usize, usize> = HashMap::new();
    let mut id_of = |seg: usize, uf: &mut UnionFind| {
        let root = uf.find(seg);
        let next = arc_id.len();
        *arc_id.entry(root).or_insert(next)
    };
    let mut entry_slot = vec![[usize::MAX; 2]; n_cross];
    for c0 in 0..n_cross {
        for strand in 0..2 {
            if entry_slot[c0][strand] != usize::MAX {
                continue;
            }
            let (mut c, mut s) = (c0, strand);
            loop {
                entry_slot[c][s % 2] = s;
                id_of(seg_of_port[4 * c + s], &mut uf);
                let exit = 4 * c + (s + 2) % 4;
                let next = port_partner[exit];
                (c, s) = (next / 4, next % 4);
                if (c, s) == (c0, strand) {
                    break;
                }
            }
        }
    }

    let mut crossings = Vec::with_capacity(n_cross);
    for (c, &par) in b.over_parity.iter().enumerate() {
        let over_entry = entry_slot[c][par];
        let under_entry = entry_slot[c][1 - par];
        let arc = |slot: usize, uf: &mut UnionFind| arc_id[&uf.find(seg_of_port[4 * c + slot])];
        crossings.push(Crossing {
            over_in: arc(over_entry, &mut uf),
            over_out: arc((over_entry + 2) % 4, &mut uf),
            under_in: arc(under_entry, &mut uf),
            under_out: arc((under_entry + 2) % 4, &mut uf),
            sign: crossing_sign(over_entry, under_entry),
        });
    }
    let n_arcs = arc_id.len() + free_loops;
    PlanarDiagram::new((0..n_arcs).collect(), crossings).expect("traced diagram is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tangle::{montesinos_word, parse_word, rational_word, Frac, MontesinosSpec};

    fn trace(s: &str) -> PlanarDiagram {
        closure_trace(&parse_word(s).unwrap())
    }

    #[test]
    fn identity_closes_to_two_unknotted_circles() {
        let d = trace("0");
        assert_eq!(d.n_components(), 2);
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.arcs().len(), 2);
        assert_eq!(d.writhe(), None);
    }

    #[test]
    fn twist_closures() {
        // closure of a vertical 3-twist is a (2,3) torus knot
        let d = trace("3");
        assert_eq!(
            (d.n_components(), d.crossing_count(), d.arcs().len()),
            (1, 3, 3)
        );
        assert_eq!(d.writhe(), Some(3));
        assert_eq!(trace("-3").writhe(), Some(-3));
        // a horizontal twist closes to an unknot diagram with kinks
        let h = trace("rt(3)");
        assert_eq!((h.n_components(), h.crossing_count()), (1, 3));
        assert_eq!(trace("2").n_components(), 2);
        assert_eq!(trace("rt(2)").n_components(), 1);
    }

    #[test]
    fn rational_and_pretzel_closures() {
        let t = closure_trace(&rational_word(Frac::new(1, 3).unwrap()));
        assert_eq!((t.n_components(), t.crossing_count()), (1, 3));
        let p = closure_trace(&montesinos_word(
            &MontesinosSpec::pretzel(&[3, 3, 3]).unwrap(),
        ));
        assert_eq!((p.n_components(), p.crossing_count()), (1, 9));
        assert_eq!(p.arcs().len(), 9);
    }

    #[test]
    fn every_arc_has_two_endpoints() {
        for s in [
            "3",
            "rt(3)",
            "rt(4*rt(2))",
            "rt(2)*rt(-3)*rt(5)",
            "rt(1*rt(2))*3",
        ] {
            let d = trace(s);
            let mut count = vec![0; d.arcs().len()];
            for c in d.crossings() {
                count[c.under_in] += 1;
                count[c.under_out] += 1;
                assert_eq!(c.over_in, c.over_out);
            }
            assert!(count.iter().all(|&k| k == 2), "{s}: {count:?}");
        }
    }

    #[test]
    fn pd_json_round_trip() {
        let d = trace("0");
        let text = d.to_pd_json();
        assert_eq!(
            text,
            r#"{"n_components":2,"writhe":null,"arcs":[0,1],"crossings":[]}"#
        );
        assert_eq!(from_pd_json(&text).unwrap(), d);
        let t = closure_trace(&rational_word(Frac::new(1, 3).unwrap()));
        assert_eq!(from_pd_json(&to_pd_json(&t)).unwrap(), t);
    }

    #[test]
    fn pd_json_schema_errors() {
        assert!(matches!(from_pd_json("{"), Err(Error::Schema(_))));
        assert!(matches!(
            from_pd_json(r#"{"n_components":1,"writhe":0,"arcs":[0],"crossings":[],"x":1}"#),
            Err(Error::Schema(_))
        ));
        let bad_sign = r#"{"n_components":1,"writhe":2,"arcs":[0],
            "crossings":[{"over_in":0,"over_out":0,"under_in":0,"under_out":0,"sign":2}]}"#;
        assert!(matches!(from_pd_json(bad_sign), Err(Error::Schema(_))));
        let unknown_arc = r#"{"n_components":1,"writhe":1,"arcs":[0],
            "crossings":[{"over_in":0,"over_out":0,"under_in":0,"under_out":7,"sign":1}]}"#;
        assert!(matches!(from_pd_json(unknown_arc), Err(Error::Schema(_))));
        let wrong_count = r#"{"n_components":2,"writhe":null,"arcs":[0],"crossings":[]}"#;
        assert!(matches!(from_pd_json(wrong_count), Err(Error::Schema(_))));
    }
}
