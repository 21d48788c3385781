//! Winding numbers of curves on the fiber and the admissible framing.
//!
//! Each polygon is drawn as a regular polygon on its vertical sides, with
//! side `i` (in the surface orientation) having outward normal at angle
//! `2 pi i / k`. A reference vector field is constant in every polygon, at
//! angle `alpha` in that polygon's frame, and rotates across each vertical
//! edge by an integer lift of the frame mismatch. Angles are measured in
//! units of `pi / 3`, so a full turn is 6.
//!
//! Curves cross vertical edges perpendicularly and run straight between
//! them; the reference winding of a curve is the total turning of its
//! tangent relative to the field. The admissible framing subtracts the
//! linear correction that makes every distinguished cycle wind zero.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{Curve, FiberComplex};

/// Range for the per-edge lift of the field rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lift {
    /// `(-3, 3]`
    Centered,
    /// `[0, 6)`
    Positive,
}

#[derive(Debug, Clone)]
pub struct Framing<'a> {
    fiber: &'a FiberComplex,
    alpha: Vec<i64>,
    lift: Lift,
    reference_of_cycles: Vec<i64>,
}

impl<'a> Framing<'a> {
    pub fn new(fiber: &'a FiberComplex) -> Self {
        Self::with_reference(fiber, vec![0; fiber.face_count()], Lift::Centered)
    }

    /// A different reference field: `alpha[f]` is the field angle in face `f`.
    pub fn with_reference(fiber: &'a FiberComplex, alpha: Vec<i64>, lift: Lift) -> Self {
        assert_eq!(alpha.len(), fiber.face_count());
        let mut f = Framing { fiber, alpha, lift, reference_of_cycles: Vec::new() };
        f.reference_of_cycles =
            (0..fiber.mu()).map(|v| f.reference_winding(&fiber.vanishing_cycle(v))).collect();
        f
    }

    pub fn fiber(&self) -> &'a FiberComplex {
        self.fiber
    }

    /// Side index of half-edge `h` in the surface frame of its face.
    fn side(&self, h: usize) -> (i64, i64) {
        let f = self.fiber.face_of(h);
        let k = self.fiber.face(f).len() as i64;
        let i = self.fiber.face_pos(h) as i64;
        let i = if self.fiber.orientation(f) > 0 { i } else { (k - i) % k };
        (i, k)
    }

    /// Field rotation seen by a curve crossing `g` into its face.
    fn crossing_turn(&self, g: usize) -> i64 {
        let h = self.fiber.graph().map().twin(g);
        let canonical = g < h;
        let (c, from) = if canonical { (g, h) } else { (h, g) };
        let (j, kb) = self.side(c);
        let (i, ka) = self.side(from);
        let a = self.alpha[self.fiber.face_of(from)];
        let b = self.alpha[self.fiber.face_of(c)];
        let raw = (6 * j / kb + 3 - 6 * i / ka + a - b).rem_euclid(6);
        let lifted = match self.lift {
            Lift::Centered if raw > 3 => raw - 6,
            _ => raw,
        };
        if canonical {
            lifted
        } else {
            -lifted
        }
    }

    /// Turning of a straight chord entering through `g` and leaving through
    /// `exit`, both sides of the same face.
    fn chord_turn(&self, g: usize, exit: usize) -> i64 {
        let (i, k) = self.side(g);
        let (j, _) = self.side(exit);
        let d = (j - i).rem_euclid(k);
        6 * d / k - 3
    }

    fn total_turning(&self, c: &Curve) -> i64 {
        let twin = |h| self.fiber.graph().map().twin(h);
        let n = c.crossings.len();
        (0..n)
            .map(|i| {
                let g = c.crossings[i];
                let next = c.crossings[(i + 1) % n];
                self.crossing_turn(g) + self.chord_turn(g, twin(next))
            })
            .sum()
    }

    /// Winding relative to the reference field, in full turns.
    pub fn reference_winding(&self, c: &Curve) -> i64 {
        let t = self.total_turning(c);
        debug_assert_eq!(t % 6, 0, "closed curve with fractional turning");
        t / 6
    }

    /// Winding in the admissible framing without the embeddedness check.
    pub fn winding_unchecked(&self, c: &Curve) -> Result<i64> {
        self.fiber.check_curve(c)?;
        let coords = self.fiber.coordinates(c);
        Ok(self.correct(self.reference_winding(c), &coords))
    }

    fn correct(&self, reference: i64, coords: &[i64]) -> i64 {
        reference - coords.iter().zip(&self.reference_of_cycles).map(|(a, b)| a * b).sum::<i64>()
    }

    /// Winding of an embedded curve in the admissible framing.
    pub fn winding(&self, c: &Curve) -> Result<i64> {
        self.check_embedded(c)?;
        self.winding_unchecked(c)
    }

    /// Embedded and homologically essential with zero winding.
    pub fn admissible(&self, c: &Curve) -> Result<bool> {
        let w = self.winding(c)?;
        Ok(w == 0 && self.fiber.coordinates(c).iter().any(|&x| x != 0))
    }

    /// Sufficient test for a simple curve: each edge is crossed at most once
    /// and no two chords in a polygon interleave.
    pub fn check_embedded(&self, c: &Curve) -> Result<()> {
        self.fiber.check_curve(c)?;
        let map = self.fiber.graph().map();
        let n = c.crossings.len();
        let mut used = vec![false; self.fiber.edge_count()];
        for &g in &c.crossings {
            let e = self.fiber.edge_index(g);
            if used[e] {
                return Err(Error::NotEmbedded(format!("edge of half-edge {g} is crossed twice")));
            }
            used[e] = true;
        }
        let mut chords: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.fiber.face_count()];
        for i in 0..n {
            let g = c.crossings[i];
            let exit = map.twin(c.crossings[(i + 1) % n]);
            chords[self.fiber.face_of(g)].push((self.fiber.face_pos(g), self.fiber.face_pos(exit)));
        }
        for (f, list) in chords.iter().enumerate() {
            let k = self.fiber.face(f).len();
            for (a, &(p, q)) in list.iter().enumerate() {
                for &(s, t) in &list[a + 1..] {
                    let between = |x: usize| (x + k - p) % k < (q + k - p) % k && x != p;
                    if between(s) != between(t) {
                        return Err(Error::NotEmbedded(format!("chords cross in face {f}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Evaluates a curve expression to its class and winding.
    pub fn evaluate(&self, e: &CurveExpr) -> Result<ClassValue> {
        let mu = self.fiber.mu();
        match e {
            CurveExpr::Cycle(v) => {
                if *v >= mu {
                    return Err(Error::BadParams(format!("no distinguished cycle v{v}")));
                }
                let mut coords = vec![0; mu];
                coords[*v] = 1;
                Ok(ClassValue { coords, winding: 0 })
            }
            CurveExpr::Boundary(i) => {
                let c = self.fiber.boundary_curves().get(*i).ok_or_else(|| {
                    Error::BadParams(format!("no boundary curve b{i}"))
                })?;
                Ok(ClassValue { coords: self.fiber.coordinates(c), winding: self.winding_unchecked(c)? })
            }
            CurveExpr::Twist { about, power, target } => {
                let c = self.evaluate(about)?;
                let d = self.evaluate(target)?;
                let m = power * self.fiber.pairing(&c.coords, &d.coords);
                let coords = d.coords.iter().zip(&c.coords).map(|(x, y)| x + m * y).collect();
                Ok(ClassValue { coords, winding: d.winding + m * c.winding })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassValue {
    pub coords: Vec<i64>,
    pub winding: i64,
}

impl ClassValue {
    pub fn is_admissible(&self) -> bool {
        self.winding == 0 && self.coords.iter().any(|&x| x != 0)
    }
}

/// Curves built from distinguished cycles, boundary curves and Dehn twists.
/// `T(c)^k(d)` twists `d` about `c` `k` times, acting on classes by
/// `x -> x + k <c, x> c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveExpr {
    Cycle(usize),
    Boundary(usize),
    Twist { about: Box<CurveExpr>, power: i64, target: Box<CurveExpr> },
}

impl fmt::Display for CurveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveExpr::Cycle(v) => write!(f, "v{v}"),
            CurveExpr::Boundary(i) => write!(f, "b{i}"),
            CurveExpr::Twist { about, power: 1, target } => write!(f, "T({about})({target})"),
            CurveExpr::Twist { about, power, target } => write!(f, "T({about})^{power}({target})"),
        }
    }
}

impl std::str::FromStr for CurveExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, what: &str) -> Error {
        Error::BadParams(format!("curve expression: {what} at offset {}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn number(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.error("expected a number"))
    }

    fn index(&mut self) -> Result<usize> {
        let n = self.number()?;
        usize::try_from(n).map_err(|_| self.error("negative index"))
    }

    fn expr(&mut self) -> Result<CurveExpr> {
        match self.peek() {
            Some('v') => {
                self.pos += 1;
                Ok(CurveExpr::Cycle(self.index()?))
            }
            Some('b') => {
                self.pos += 1;
                Ok(CurveExpr::Boundary(self.index()?))
            }
            Some('T') => {
                self.pos += 1;
                self.eat('(')?;
                let about = self.expr()?;
                self.eat(')')?;
                let power = if self.peek() == Some('^') {
                    self.pos += 1;
                    self.number()?
                } else {
                    1
                };
                self.eat('(')?;
                let target = self.expr()?;
                self.eat(')')?;
                Ok(CurveExpr::Twist { about: Box::new(about), power, target: Box::new(target) })
            }
            _ => Err(self.error("expected v<i>, b<i> or T(")),
        }
    }
}

/// Resolves the crossing of two distinguished cycles of adjacent vertices
/// along the edge `g` (from `u` to `w`), giving a curve in the class
/// `a_u + a_w`.
pub fn smoothing(fiber: &FiberComplex, g: usize) -> Curve {
    let map = fiber.graph().map();
    let (u, w) = (map.origin(g), map.dest(g));
    let a = fiber.vanishing_cycle(u).crossings;
    let b = fiber.vanishing_cycle(w).crossings;
    let i = a.iter().position(|&x| x == g).expect("g leaves u");
    let j = b.iter().position(|&x| x == map.twin(g)).expect("twin g leaves w");
    let mut out = Vec::with_capacity(a.len() + b.len() - 2);
    out.extend_from_slice(&b[..j]);
    out.extend_from_slice(&a[i + 1..]);
    out.extend_from_slice(&a[..i]);
    out.extend_from_slice(&b[j + 1..]);
    Curve { crossings: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chebyshev_divide, generic_lines};

    #[test]
    fn distinguished_cycles_have_zero_winding() {
        let f = FiberComplex::build(&generic_lines(4).unwrap()).unwrap();
        let fr = Framing::new(&f);
        for v in 0..f.mu() {
            let c = f.vanishing_cycle(v);
            assert_eq!(fr.winding(&c).unwrap(), 0);
            assert!(fr.admissible(&c).unwrap());
        }
    }

    #[test]
    fn boundary_windings_sum_to_euler_characteristic() {
        for d in [chebyshev_divide(2, 3).unwrap(), chebyshev_divide(3, 4).unwrap(), generic_lines(5).unwrap()] {
            let f = FiberComplex::build(&d).unwrap();
            let fr = Framing::new(&f);
            let total: i64 =
                f.boundary_curves().iter().map(|c| fr.winding_unchecked(c).unwrap()).sum();
            assert_eq!(total, f.chi());
        }
    }

    #[test]
    fn parse_expressions() {
        let e: CurveExpr = "T(v3)^-1(v5)".parse().unwrap();
        assert_eq!(e.to_string(), "T(v3)^-1(v5)");
        let e: CurveExpr = "T(v1)(T(b0)^2(v2))".parse().unwrap();
        assert_eq!(e.to_string(), "T(v1)(T(b0)^2(v2))");
        for bad in ["", "v", "T(v1)", "T(v1)(v2", "x3", "v1v2"] {
            assert_eq!(bad.parse::<CurveExpr>().unwrap_err().code(), "BadParams", "{bad}");
        }
    }

    #[test]
    fn twist_of_adjacent_cycles() {
        let f = FiberComplex::build(&chebyshev_divide(2, 3).unwrap()).unwrap();
        let fr = Framing::new(&f);
        let e: CurveExpr = "T(v0)(v1)".parse().unwrap();
        let val = fr.evaluate(&e).unwrap();
        assert_eq!(val.coords[1], 1);
        assert_eq!(val.coords[0].abs(), 1);
        assert!(val.is_admissible());
    }

    #[test]
    fn repeated_edge_is_rejected() {
        let f = FiberComplex::build(&chebyshev_divide(2, 3).unwrap()).unwrap();
        let fr = Framing::new(&f);
        let mut c = f.vanishing_cycle(0);
        c.crossings.extend(c.crossings.clone());
        assert_eq!(fr.winding(&c).unwrap_err().code(), "NotEmbedded");
    }
}
