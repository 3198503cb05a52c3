//! Band presentations `(A, b, c, eps)` drawn on a ring.
//!
//! The annulus `A` is flat and its boundary circles `a1` (outer) and `a2`
//! (inner) are closed to the left like a braid closure, so a row of the
//! diagram reads `returns | hole | a2 .. a1 | outside`. The band leaves `a1`
//! outwards at the bottom, follows its route upwards and ends on `a2` from
//! the hole. Blowing down `c` puts `-eps` full twists on the ring strands.
//!
//! An annulus twist turns each passage of a band edge through `A` into a
//! helix whose laps run around the ring between `a2` and `a1`. Laps drift
//! across the annulus as they go round, outwards or inwards depending on
//! whether the edge enters `A` from above or below, and laps drifting in
//! opposite directions cross. File format, one directive per line:
//!
//! ```text
//! band NAME
//! param m
//! epsilon -1|1
//! orientable odd|even EXPR     A ∪ b is orientable when EXPR has this parity
//! twist EXPR                   half twists of the band, right-handed if positive
//! wrap SHIFT EXPR              full twists of three strands, the first SHIFT
//!                              places right of the band's left edge
//! pierce outer-over|outer-under
//! pass over|under              cross the whole annulus without meeting it
//! blowdown                     position of c along the ring
//! ```
//!
//! Without a blowdown (and `epsilon`) the file describes the ribbon knot
//! `∂(A ∪ b)` itself.

use crate::diagram::morse::MorseBuilder;
use crate::diagram::template::AffineExpr;
use crate::diagram::{DiagramError, PlanarDiagram};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandStep {
    Twist(i64),
    /// Full twists on three adjacent strands starting `shift` places right
    /// of the band's left edge, right-handed if positive.
    Wrap { shift: i64, count: i64 },
    /// Passage through `A`; `outer_over` when the band is above `A` on the `a1` side.
    Pierce { outer_over: bool },
    Pass { over: bool },
    Blowdown,
}

/// A concrete band presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandPresentation {
    pub name: String,
    pub epsilon: i64,
    /// Declared orientability of `A ∪ b`.
    pub orientable: bool,
    pub route: Vec<BandStep>,
    /// Boundary curves of the associated annulus `A'`.
    pub marked_curves: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum StepExpr {
    Twist(AffineExpr),
    Wrap(i64, AffineExpr),
    Pierce(bool),
    Pass(bool),
    Blowdown,
}

/// Parametric band presentation as stored in a data file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandTemplate {
    pub name: String,
    pub params: Vec<String>,
    epsilon: i64,
    orientable: Option<(bool, AffineExpr)>,
    steps: Vec<StepExpr>,
}

impl BandTemplate {
    pub fn parse(src: &str) -> Result<BandTemplate, DiagramError> {
        let mut t = BandTemplate { name: String::new(), params: Vec::new(), epsilon: 0, orientable: None, steps: Vec::new() };
        for (lineno, line) in src.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| DiagramError::Template(format!("line {}: {msg}: {line:?}", lineno + 1));
            let words: Vec<&str> = line.split_whitespace().collect();
            let rest = || words[1..].join("");
            match (words[0], words.len()) {
                ("band", 2) => t.name = words[1].to_string(),
                ("param", _) => t.params.extend(words[1..].iter().map(|s| s.to_string())),
                ("epsilon", 2) => {
                    t.epsilon = match words[1] {
                        "1" | "+1" => 1,
                        "-1" => -1,
                        _ => return Err(err("epsilon must be 1 or -1")),
                    }
                }
                ("orientable", n) if n >= 3 => {
                    let odd = match words[1] {
                        "odd" => true,
                        "even" => false,
                        _ => return Err(err("expected odd or even")),
                    };
                    t.orientable = Some((odd, AffineExpr::parse(&words[2..].join(""))?));
                }
                ("twist", n) if n >= 2 => t.steps.push(StepExpr::Twist(AffineExpr::parse(&rest())?)),
                ("wrap", n) if n >= 3 => {
                    let shift = words[1].parse().map_err(|_| err("expected a strand offset"))?;
                    t.steps.push(StepExpr::Wrap(shift, AffineExpr::parse(&words[2..].join(""))?))
                }
                ("pierce", 2) => t.steps.push(StepExpr::Pierce(match words[1] {
                    "outer-over" => true,
                    "outer-under" => false,
                    _ => return Err(err("expected outer-over or outer-under")),
                })),
                ("pass", 2) => t.steps.push(StepExpr::Pass(match words[1] {
                    "over" => true,
                    "under" => false,
                    _ => return Err(err("expected over or under")),
                })),
                ("blowdown", 1) => t.steps.push(StepExpr::Blowdown),
                _ => return Err(err("unknown directive")),
            }
        }
        match t.steps.iter().filter(|s| **s == StepExpr::Blowdown).count() {
            0 if t.epsilon != 0 => return Err(DiagramError::Template("epsilon without blowdown".into())),
            0 => {}
            1 if t.epsilon == 0 => return Err(DiagramError::Template("missing epsilon".into())),
            1 => {}
            _ => return Err(DiagramError::Template("at most one blowdown expected".into())),
        }
        Ok(t)
    }

    pub fn load(path: &std::path::Path) -> Result<BandTemplate, DiagramError> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| DiagramError::Template(format!("{}: {e}", path.display())))?;
        Self::parse(&src)
    }

    pub fn instantiate(&self, params: &BTreeMap<String, i64>) -> Result<BandPresentation, DiagramError> {
        let route = self
            .steps
            .iter()
            .map(|s| {
                Ok(match s {
                    StepExpr::Twist(e) => BandStep::Twist(e.eval(params)?),
                    StepExpr::Wrap(shift, e) => BandStep::Wrap { shift: *shift, count: e.eval(params)? },
                    StepExpr::Pierce(o) => BandStep::Pierce { outer_over: *o },
                    StepExpr::Pass(o) => BandStep::Pass { over: *o },
                    StepExpr::Blowdown => BandStep::Blowdown,
                })
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        let bp = BandPresentation {
            name: self.name.clone(),
            epsilon: self.epsilon,
            orientable: false,
            route,
            marked_curves: ["c1".into(), "c2".into()],
        };
        let orientable = match &self.orientable {
            Some((odd, e)) => (e.eval(params)?.rem_euclid(2) == 1) == *odd,
            None => bp.route_orientable(),
        };
        Ok(BandPresentation { orientable, ..bp })
    }
}

impl BandPresentation {
    /// Orientability read off the route: a flat band from the outside of
    /// `a1` to the inside of `a2` keeps `A ∪ b` orientable, and each half
    /// twist flips that.
    pub fn route_orientable(&self) -> bool {
        let h: i64 = self.route.iter().map(|s| if let BandStep::Twist(k) = s { *k } else { 0 }).sum();
        h.rem_euclid(2) == 0
    }

    /// Framing induced by `A ∪ b`: 0 when orientable, otherwise `-4 eps`.
    pub fn induced_framing(&self) -> i64 {
        if self.orientable {
            0
        } else {
            -4 * self.epsilon
        }
    }

    /// The knot itself.
    pub fn knot(&self) -> Result<PlanarDiagram, DiagramError> {
        self.annulus_twist(0)
    }

    /// The knot after `n` annulus twists along the associated annulus.
    pub fn annulus_twist(&self, n: i64) -> Result<PlanarDiagram, DiagramError> {
        Ring::draw(self, n, false)
    }

    /// The knot together with the boundary curves `c1`, `c2` of `A'`.
    pub fn augmented_link(&self) -> Result<PlanarDiagram, DiagramError> {
        Ring::draw(self, 0, true)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Outside,
    Hole,
}

type Angle = Ratio<i64>;

/// One band edge passing through `A`: its angle along the ring and whether
/// it is above `A` on the `a1` side.
#[derive(Clone, Copy)]
struct Strand {
    angle: Angle,
    outer_over: bool,
}

/// A lap of the helix of strand `strand`; its radius across the annulus
/// (0 at `a2`, 1 at `a1`) at ring angle `phi` is `(phi - angle + k) / n`,
/// reflected for strands below `A` on the `a1` side.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Lap {
    strand: usize,
    k: i64,
}

#[derive(Clone, Copy)]
enum Event {
    Step(usize),
    Pass(usize),
    Cross(Lap, Lap),
}

struct Ring {
    b: MorseBuilder,
    loops: usize,
    hole: usize,
    marked: bool,
    /// Laps between `a2` and `a1`, inner to outer.
    laps: Vec<Lap>,
    strands: Vec<Strand>,
    n: i64,
}

impl Ring {
    fn ring(&self) -> usize {
        2 + self.laps.len() + if self.marked { 2 } else { 0 }
    }

    fn a2(&self) -> usize {
        self.loops + self.hole
    }

    fn a1(&self) -> usize {
        self.a2() + self.ring() - 1
    }

    fn radius(&self, lap: Lap, phi: Angle) -> Angle {
        let st = self.strands[lap.strand];
        let r = (phi - st.angle + Angle::from_integer(lap.k)) / Angle::from_integer(self.n);
        if st.outer_over {
            r
        } else {
            Angle::from_integer(1) - r
        }
    }

    fn exists(&self, lap: Lap, phi: Angle) -> bool {
        let r = self.radius(lap, phi);
        r > Angle::from_integer(0) && r < Angle::from_integer(1)
    }

    fn laps_at(&self, phi: Angle) -> Vec<Lap> {
        let span = self.n.abs() + 2;
        let mut laps: Vec<Lap> = (0..self.strands.len())
            .flat_map(|s| (-span..=span).map(move |k| Lap { strand: s, k }))
            .filter(|&l| self.exists(l, phi))
            .collect();
        laps.sort_by_key(|&l| self.radius(l, phi));
        laps
    }

    fn position(&self, lap: Lap) -> usize {
        let i = self.laps.iter().position(|&l| l == lap).expect("lap on the ring");
        self.a2() + 1 + i
    }

    fn draw(bp: &BandPresentation, n: i64, marked: bool) -> Result<PlanarDiagram, DiagramError> {
        if marked && n != 0 {
            return Err(DiagramError::Template("marked curves are drawn untwisted".into()));
        }
        let steps = bp.route.len() as i64;
        let at = |i: i64| Angle::new(i, steps + 2);
        let width = Angle::new(1, 16 * (steps + 2));
        let mut strands = Vec::new();
        let mut pass_of = Vec::new();
        for (i, st) in bp.route.iter().enumerate() {
            if let BandStep::Pierce { outer_over } = *st {
                for e in 0..2 {
                    pass_of.push(i);
                    // off-grid, so that no crossing falls on the seam or on a step
                    let angle = at(i as i64 + 1) + width * Angle::new(3 * e + 1, 3);
                    strands.push(Strand { angle, outer_over });
                }
            }
        }
        let mut r = Ring { b: MorseBuilder::new(), loops: 0, hole: 0, marked, laps: Vec::new(), strands, n };
        if n != 0 {
            r.laps = r.laps_at(Angle::from_integer(0));
        }
        r.loops = r.ring();
        for i in 0..r.loops {
            r.b.cup(i)?;
        }
        let mut events: Vec<(Angle, Event)> = (0..bp.route.len())
            .filter(|&i| !matches!(bp.route[i], BandStep::Pierce { .. }))
            .map(|i| (at(i as i64 + 1), Event::Step(i)))
            .collect();
        events.extend(r.strands.iter().enumerate().map(|(s, st)| (st.angle, Event::Pass(s))));
        if n != 0 {
            let span = n.abs() + 2;
            let (lo, hi) = (Angle::from_integer(0), Angle::from_integer(1));
            for (s, a) in r.strands.iter().enumerate().filter(|(_, st)| st.outer_over) {
                for (t, b) in r.strands.iter().enumerate().filter(|(_, st)| !st.outer_over) {
                    for k in -span..=span {
                        for l in -span..=span {
                            let phi = (Angle::from_integer(n - k - l) + a.angle + b.angle) / 2;
                            let (p, q) = (Lap { strand: s, k }, Lap { strand: t, k: l });
                            if phi > lo && phi < hi && r.exists(p, phi) && r.exists(q, phi) {
                                events.push((phi, Event::Cross(p, q)));
                            }
                        }
                    }
                }
            }
        }
        events.sort_by_key(|e| e.0);
        // band attached to a1 from outside
        let p = r.a1();
        r.b.cup(p)?;
        let mut side = Side::Outside;
        for (phi, ev) in events {
            match ev {
                Event::Step(i) => match bp.route[i] {
                    BandStep::Twist(k) => {
                        let p = if side == Side::Outside { r.a1() + 1 } else { r.a2() - 2 };
                        r.b.half_twists(p, 2, k)?;
                    }
                    BandStep::Wrap { shift, count } => {
                        let left = if side == Side::Outside { r.a1() + 1 } else { r.a2() - 2 };
                        let p = usize::try_from(left as i64 + shift)
                            .map_err(|_| DiagramError::Template("wrap outside the diagram".into()))?;
                        r.b.full_twists(p, 3, count)?;
                    }
                    BandStep::Blowdown => {
                        let (p, k) = (r.a2(), r.ring());
                        r.b.full_twists(p, k, -bp.epsilon)?;
                    }
                    BandStep::Pass { over } => {
                        for _ in 0..2 {
                            match side {
                                Side::Outside => {
                                    let (from, to) = (r.a1() + 1, r.a2());
                                    r.b.slide(from, to, over)?;
                                    r.hole += 1;
                                }
                                Side::Hole => {
                                    let (from, to) = (r.a2() - 1, r.a1());
                                    r.b.slide(from, to, over)?;
                                    r.hole -= 1;
                                }
                            }
                        }
                        side = if side == Side::Outside { Side::Hole } else { Side::Outside };
                    }
                    BandStep::Pierce { .. } => unreachable!(),
                },
                Event::Pass(s) => {
                    let inbound = side == Side::Outside;
                    let outer_over = r.strands[s].outer_over;
                    if n == 0 {
                        r.straight(inbound, outer_over)?;
                    } else {
                        // a new lap starts at a1 when laps drift inwards
                        let forward = (n > 0) != outer_over;
                        r.outer_end(inbound, forward, outer_over, s, phi)?;
                        r.inner_end(inbound, forward, outer_over, s, phi)?;
                    }
                    // the second edge completes the passage
                    let last = s + 1 == r.strands.len() || pass_of[s + 1] != pass_of[s];
                    if last {
                        side = if inbound { Side::Hole } else { Side::Outside };
                    }
                }
                Event::Cross(p, q) => {
                    let (i, j) = (r.position(p), r.position(q));
                    let over_on_top = r.radius(p, phi) * 2 > Angle::from_integer(1);
                    let (left, left_on_top) = if i < j { (i, over_on_top) } else { (j, !over_on_top) };
                    if i.abs_diff(j) != 1 {
                        return Err(DiagramError::Template("helix laps out of order".into()));
                    }
                    r.b.slide(left, left + 1, left_on_top)?;
                    let (li, lj) = (i - r.a2() - 1, j - r.a2() - 1);
                    r.laps.swap(li, lj);
                }
            }
        }
        if side != Side::Hole {
            return Err(DiagramError::Template("band must end inside the annulus".into()));
        }
        // band attached to a2 from the hole
        let p = r.a2() - 1;
        r.b.cap(p)?;
        r.hole -= 2;
        let wrapped: Vec<Lap> = r.laps.iter().map(|l| Lap { strand: l.strand, k: l.k + 1 }).collect();
        if n != 0 && wrapped != r.laps_at(Angle::from_integer(0)) {
            return Err(DiagramError::Template("helix laps do not close up".into()));
        }
        for i in (0..r.loops).rev() {
            r.b.cap(i)?;
        }
        r.b.finish()
    }

    /// Passage without twisting: cross `a1` (and `c1`) on the outer side and
    /// `c2`, `a2` on the inner side.
    fn straight(&mut self, inbound: bool, outer_over: bool) -> Result<(), DiagramError> {
        let outer = if self.marked { 2 } else { 1 };
        let steps = self.ring();
        if inbound {
            let mut p = self.a1() + 1;
            for i in 0..steps {
                self.b.slide(p, p - 1, if i < outer { outer_over } else { !outer_over })?;
                p -= 1;
            }
            self.hole += 1;
        } else {
            let mut p = self.a2() - 1;
            for i in 0..steps {
                self.b.slide(p, p + 1, if i >= steps - outer { outer_over } else { !outer_over })?;
                p += 1;
            }
            self.hole -= 1;
        }
        Ok(())
    }

    /// The lap of strand `s` that begins or ends at its own angle on the
    /// given side of the annulus.
    fn end_lap(&self, s: usize, phi: Angle, outer: bool, after: bool) -> Lap {
        let probe = if after { phi + Angle::new(1, 1 << 20) } else { phi - Angle::new(1, 1 << 20) };
        let span = self.n.abs() + 2;
        (-span..=span)
            .map(|k| Lap { strand: s, k })
            .filter(|&l| self.exists(l, probe))
            .max_by_key(|&l| {
                let r = self.radius(l, probe);
                if outer {
                    r
                } else {
                    -r
                }
            })
            .expect("helix lap")
    }

    /// Joins the band strand on the outside to the outermost lap.
    fn outer_end(&mut self, inbound: bool, forward: bool, over: bool, s: usize, phi: Angle) -> Result<(), DiagramError> {
        let a1 = self.a1();
        match (inbound, forward) {
            (true, true) => {
                self.b.slide(a1 + 1, a1, over)?;
                let lap = self.end_lap(s, phi, true, true);
                self.laps.push(lap);
            }
            (true, false) => {
                self.b.slide(a1 + 1, a1, over)?;
                self.b.cap(a1 - 1)?;
                self.laps.pop();
            }
            (false, true) => {
                self.b.cup(a1)?;
                self.b.slide(a1 + 1, a1 + 2, over)?;
                let lap = self.end_lap(s, phi, true, true);
                self.laps.push(lap);
            }
            (false, false) => {
                self.b.slide(a1 - 1, a1, over)?;
                self.laps.pop();
            }
        }
        Ok(())
    }

    /// Joins the innermost lap to the band strand in the hole.
    fn inner_end(&mut self, inbound: bool, forward: bool, outer_over: bool, s: usize, phi: Angle) -> Result<(), DiagramError> {
        let over = !outer_over;
        let a2 = self.a2();
        match (inbound, forward) {
            (true, true) => {
                self.b.slide(a2 + 1, a2, over)?;
                self.laps.remove(0);
                self.hole += 1;
            }
            (false, false) => {
                self.b.slide(a2 - 1, a2, over)?;
                let lap = self.end_lap(s, phi, false, true);
                self.laps.insert(0, lap);
                self.hole -= 1;
            }
            (false, true) => {
                self.b.slide(a2 - 1, a2, over)?;
                self.b.cap(a2)?;
                self.laps.remove(0);
                self.hole -= 1;
            }
            (true, false) => {
                self.b.cup(a2 + 1)?;
                self.b.slide(a2 + 1, a2, over)?;
                let lap = self.end_lap(s, phi, false, true);
                self.laps.insert(0, lap);
                self.hole += 1;
            }
        }
        Ok(())
    }
}
