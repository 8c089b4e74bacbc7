//! Deterministic annulus-diagram emitter for braid words and plat closures.
//!
//! The diagram lives on a disk: marked point `i` sits at angle `2*pi*i/k`
//! (clockwise on screen), the braid occupies the annulus between the outer
//! circle (leftmost letter, residual side) and the inner circle (rightmost
//! letter, internal side), with one concentric ring per letter. Plat
//! closures add semicircular internal arcs inside the inner disk and radial
//! residual stubs running to the dashed boundary circle, where antipodal
//! points are identified.
//!
//! Output is byte-stable for equal inputs: fixed canvas, fixed precision,
//! fixed element order. Rendering is literal; a word and its free reduction
//! draw differently.

use crate::error::{Error, Result};
use crate::oracle;
use crate::word::{BraidWord, Sign};

const CANVAS: f64 = 1000.0;
const CX: f64 = 500.0;
const CY: f64 = 500.0;
const R_BOUNDARY: f64 = 470.0;
const R_OUTER: f64 = 380.0;
const R_INNER: f64 = 150.0;
const UNDER_GAP: f64 = 9.0;

/// Output format of the renderers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Point {
    x: f64,
    y: f64,
}

/// Logical endpoint of a drawn curve piece, used for curve tracing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    /// Strand position `slot` at letter-boundary `level` (0 = outermost).
    Lattice { level: usize, slot: u16 },
    /// Boundary-circle point of the antipodal pair with this coset label.
    Boundary { label: u16 },
}

#[derive(Debug, Clone)]
enum Primitive {
    Guide { radius: f64 },
    BoundaryCircle,
    Strand { from: Point, to: Point, a: Node, b: Node },
    Over { from: Point, to: Point, a: Node, b: Node },
    /// Under-strand with a visual gap around the crossing point; one logical
    /// segment drawn as two lines.
    Under { from: Point, to: Point, gap_at: Point, a: Node, b: Node },
    InternalArc { from: Point, to: Point, sweep: u8, radius: f64, a: Node, b: Node },
    ResidualStub { from: Point, to: Point, a: Node, b: Node },
}

/// Placement data plus the drawn primitives of one diagram.
#[derive(Debug, Clone)]
pub struct DiagramLayout {
    word: BraidWord,
    plat: bool,
    primitives: Vec<Primitive>,
}

fn polar(radius: f64, angle: f64) -> Point {
    Point { x: CX + radius * angle.cos(), y: CY + radius * angle.sin() }
}

fn segment_intersection(a1: Point, a2: Point, b1: Point, b2: Point) -> Point {
    let d1 = (a2.x - a1.x, a2.y - a1.y);
    let d2 = (b2.x - b1.x, b2.y - b1.y);
    let denom = d1.0 * d2.1 - d1.1 * d2.0;
    let t = ((b1.x - a1.x) * d2.1 - (b1.y - a1.y) * d2.0) / denom;
    Point { x: a1.x + t * d1.0, y: a1.y + t * d1.1 }
}

impl DiagramLayout {
    /// Open braid diagram: strands and crossings only.
    pub fn braid(word: &BraidWord) -> DiagramLayout {
        let mut layout = DiagramLayout { word: word.clone(), plat: false, primitives: Vec::new() };
        layout.primitives.push(Primitive::Guide { radius: R_OUTER });
        layout.primitives.push(Primitive::Guide { radius: R_INNER });
        layout.push_braid_body();
        layout
    }

    /// Plat-closure diagram: the braid plus internal arcs and residual
    /// stubs through the antipodal boundary.
    pub fn plat(word: &BraidWord) -> Result<DiagramLayout> {
        let n = word.strands().half()?;
        let mut layout = DiagramLayout { word: word.clone(), plat: true, primitives: Vec::new() };
        layout.primitives.push(Primitive::Guide { radius: R_OUTER });
        layout.primitives.push(Primitive::Guide { radius: R_INNER });
        layout.primitives.push(Primitive::BoundaryCircle);
        layout.push_braid_body();

        let k = word.k();
        let m = word.len();
        let inner = layout.ring_radius(m);
        for j in 1..=n {
            let (s1, s2) = (2 * j - 1, 2 * j);
            let from = polar(inner, layout.angle(s1));
            let to = polar(inner, layout.angle(s2));
            let (sweep, radius) = inner_arc_geometry(from, to);
            layout.primitives.push(Primitive::InternalArc {
                from,
                to,
                sweep,
                radius,
                a: Node::Lattice { level: m, slot: s1 },
                b: Node::Lattice { level: m, slot: s2 },
            });
        }
        for i in 1..=k {
            let label = (i - 1) % n + 1;
            layout.primitives.push(Primitive::ResidualStub {
                from: polar(R_OUTER, layout.angle(i)),
                to: polar(R_BOUNDARY, layout.angle(i)),
                a: Node::Lattice { level: 0, slot: i },
                b: Node::Boundary { label },
            });
        }
        Ok(layout)
    }

    fn angle(&self, slot: u16) -> f64 {
        2.0 * std::f64::consts::PI * f64::from(slot) / f64::from(self.word.k())
    }

    fn ring_radius(&self, level: usize) -> f64 {
        let m = self.word.len();
        if m == 0 {
            return if level == 0 { R_OUTER } else { R_INNER };
        }
        R_OUTER - (R_OUTER - R_INNER) * level as f64 / m as f64
    }

    fn push_braid_body(&mut self) {
        let k = self.word.k();
        let m = self.word.len();
        if m == 0 {
            for slot in 1..=k {
                self.primitives.push(Primitive::Strand {
                    from: polar(R_OUTER, self.angle(slot)),
                    to: polar(R_INNER, self.angle(slot)),
                    a: Node::Lattice { level: 0, slot },
                    b: Node::Lattice { level: 0, slot },
                });
            }
            return;
        }
        let letters: Vec<_> = self.word.letters().to_vec();
        for (t, letter) in letters.iter().enumerate() {
            let (r_hi, r_lo) = (self.ring_radius(t), self.ring_radius(t + 1));
            let i = letter.index;
            let j = self.word.strands().succ(i);
            for slot in 1..=k {
                if slot == i || slot == j {
                    continue;
                }
                self.primitives.push(Primitive::Strand {
                    from: polar(r_hi, self.angle(slot)),
                    to: polar(r_lo, self.angle(slot)),
                    a: Node::Lattice { level: t, slot },
                    b: Node::Lattice { level: t + 1, slot },
                });
            }
            // The crossing sits in the angular sector between i and its
            // successor; positive letters put the strand leaving slot i on
            // top.
            let from_i = polar(r_hi, self.angle(i));
            let to_j = polar(r_lo, self.angle(i) + self.sector_width());
            let from_j = polar(r_hi, self.angle(i) + self.sector_width());
            let to_i = polar(r_lo, self.angle(i));
            let cross = segment_intersection(from_i, to_j, from_j, to_i);
            let i_over = letter.sign == Sign::Pos;
            let (over, under) = if i_over {
                ((from_i, to_j, t, i, j), (from_j, to_i, t, j, i))
            } else {
                ((from_j, to_i, t, j, i), (from_i, to_j, t, i, j))
            };
            self.primitives.push(Primitive::Over {
                from: over.0,
                to: over.1,
                a: Node::Lattice { level: over.2, slot: over.3 },
                b: Node::Lattice { level: over.2 + 1, slot: over.4 },
            });
            self.primitives.push(Primitive::Under {
                from: under.0,
                to: under.1,
                gap_at: cross,
                a: Node::Lattice { level: under.2, slot: under.3 },
                b: Node::Lattice { level: under.2 + 1, slot: under.4 },
            });
        }
    }

    fn sector_width(&self) -> f64 {
        2.0 * std::f64::consts::PI / f64::from(self.word.k())
    }

    /// Number of closed curves in the drawn plat diagram, found by walking
    /// the drawn pieces through shared endpoints and the antipodal
    /// identification. `None` for open braid layouts.
    pub fn traced_closed_curves(&self) -> Option<usize> {
        if !self.plat {
            return None;
        }
        let k = self.word.k() as usize;
        let levels = self.word.len() + 1;
        let n = k / 2;
        let id = |node: Node| match node {
            Node::Lattice { level, slot } => level * k + slot as usize - 1,
            Node::Boundary { label } => levels * k + label as usize - 1,
        };
        let mut uf = oracle::UnionFind::new(levels * k + n);
        for prim in &self.primitives {
            match *prim {
                Primitive::Strand { a, b, .. }
                | Primitive::Over { a, b, .. }
                | Primitive::Under { a, b, .. }
                | Primitive::InternalArc { a, b, .. }
                | Primitive::ResidualStub { a, b, .. } => uf.union(id(a), id(b)),
                Primitive::Guide { .. } | Primitive::BoundaryCircle => {}
            }
        }
        Some(uf.component_count())
    }

    /// SVG 1.1 document, fixed 1000 x 1000 canvas.
    pub fn to_svg(&self) -> String {
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">\n"
        ));
        out.push_str("<g fill=\"none\" stroke-linecap=\"round\">\n");
        for prim in &self.primitives {
            match prim {
                Primitive::Guide { radius } => {
                    out.push_str(&format!(
                        "<circle class=\"guide\" cx=\"{CX:.2}\" cy=\"{CY:.2}\" r=\"{radius:.2}\" stroke=\"#cccccc\" stroke-width=\"1\" stroke-dasharray=\"4 6\"/>\n"
                    ));
                }
                Primitive::BoundaryCircle => {
                    out.push_str(&format!(
                        "<circle class=\"boundary\" cx=\"{CX:.2}\" cy=\"{CY:.2}\" r=\"{R_BOUNDARY:.2}\" stroke=\"#777777\" stroke-width=\"2\" stroke-dasharray=\"12 8\"/>\n"
                    ));
                }
                Primitive::Strand { from, to, .. } => {
                    out.push_str(&line("strand", *from, *to, "#111111", 3.0));
                }
                Primitive::Over { from, to, .. } => {
                    out.push_str(&line("over", *from, *to, "#111111", 3.0));
                }
                Primitive::Under { from, to, gap_at, .. } => {
                    let len = ((to.x - from.x).powi(2) + (to.y - from.y).powi(2)).sqrt();
                    let gap = UNDER_GAP.min(len / 4.0);
                    let ux = (to.x - from.x) / len;
                    let uy = (to.y - from.y) / len;
                    let p1 = Point { x: gap_at.x - ux * gap, y: gap_at.y - uy * gap };
                    let p2 = Point { x: gap_at.x + ux * gap, y: gap_at.y + uy * gap };
                    out.push_str(&line("under", *from, p1, "#111111", 3.0));
                    out.push_str(&line("under", p2, *to, "#111111", 3.0));
                }
                Primitive::InternalArc { from, to, sweep, radius, .. } => {
                    out.push_str(&format!(
                        "<path class=\"internal\" d=\"M {:.2} {:.2} A {radius:.2} {radius:.2} 0 0 {sweep} {:.2} {:.2}\" stroke=\"#1155cc\" stroke-width=\"3\"/>\n",
                        from.x, from.y, to.x, to.y
                    ));
                }
                Primitive::ResidualStub { from, to, .. } => {
                    out.push_str(&line("residual", *from, *to, "#cc3311", 3.0));
                }
            }
        }
        out.push_str("</g>\n</svg>\n");
        out
    }

    /// Fixed-size character grid over the glyphs `/ \ | _ .` and spaces.
    ///
    /// The annulus is cut open: slot `j` occupies a fixed column, each
    /// letter three rows, with the under-strand gapped at the crossing
    /// middle. A wraparound crossing is drawn in a seam band after the last
    /// slot column. Plat layouts add one dotted row per residual pair above
    /// and the internal pairing row below.
    pub fn to_ascii(&self) -> String {
        let k = self.word.k();
        let n = k / 2;
        let m = self.word.len();
        let col = |slot: u16| (4 * slot as usize) - 2;
        let seam = 4 * k as usize + 2;
        let width = 4 * k as usize + 5;
        let braid_rows = if m == 0 { 1 } else { 3 * m };
        let rows = if self.plat { n as usize + braid_rows + 1 } else { braid_rows };
        let mut grid = vec![vec![' '; width]; rows];

        let mut row0 = 0usize;
        if self.plat {
            for j in 1..=n {
                let (c1, c2) = (col(j), col(j + n));
                for c in c1..=c2 {
                    grid[(j - 1) as usize][c] = '.';
                }
            }
            row0 = n as usize;
        }

        if m == 0 {
            for slot in 1..=k {
                grid[row0][col(slot)] = '|';
            }
        }
        for (t, letter) in self.word.letters().iter().enumerate() {
            let base = row0 + 3 * t;
            let i = letter.index;
            let j = self.word.strands().succ(i);
            for slot in 1..=k {
                if slot == i || (slot == j && i != k) {
                    continue;
                }
                for r in 0..3 {
                    grid[base + r][col(slot)] = '|';
                }
            }
            let a = col(i);
            let b = if i == k { seam } else { col(j) };
            let mid = (a + b) / 2;
            grid[base][a + 1] = '\\';
            grid[base][b - 1] = '/';
            grid[base + 1][mid] = if letter.sign == Sign::Pos { '\\' } else { '/' };
            grid[base + 2][a + 1] = '/';
            grid[base + 2][b - 1] = '\\';
        }

        if self.plat {
            let last = row0 + braid_rows;
            for j in 1..=n {
                let (c1, c2) = (col(2 * j - 1), col(2 * j));
                grid[last][c1] = '|';
                grid[last][c2] = '|';
                for c in c1 + 1..c2 {
                    grid[last][c] = '_';
                }
            }
        }

        let mut out = String::with_capacity(rows * (width + 1));
        for row in grid {
            out.extend(row.iter());
            out.push('\n');
        }
        out
    }
}

fn line(class: &str, from: Point, to: Point, stroke: &str, width: f64) -> String {
    format!(
        "<line class=\"{class}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{stroke}\" stroke-width=\"{width}\"/>\n",
        from.x, from.y, to.x, to.y
    )
}

/// Sweep flag and radius for the semicircular internal arc from `a` to `b`
/// bulging toward the disk center.
fn inner_arc_geometry(a: Point, b: Point) -> (u8, f64) {
    let mx = (a.x + b.x) / 2.0;
    let my = (a.y + b.y) / 2.0;
    let radius = (((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt()) / 2.0;
    // Apex of the sweep=1 arc: quarter-turn clockwise on screen from a
    // around the midpoint.
    let ux = a.x - mx;
    let uy = a.y - my;
    let apex1 = Point { x: mx - uy, y: my + ux };
    let apex0 = Point { x: mx + uy, y: my - ux };
    let d1 = (apex1.x - CX).powi(2) + (apex1.y - CY).powi(2);
    let d0 = (apex0.x - CX).powi(2) + (apex0.y - CY).powi(2);
    (if d1 <= d0 { 1 } else { 0 }, radius)
}

/// Renders the open braid diagram.
pub fn render_braid(word: &BraidWord, format: RenderFormat) -> String {
    let layout = DiagramLayout::braid(word);
    match format {
        RenderFormat::Svg => layout.to_svg(),
        RenderFormat::Ascii => layout.to_ascii(),
    }
}

/// Renders the plat-closure diagram; the strand count must be even.
pub fn render_plat(word: &BraidWord, format: RenderFormat) -> Result<String> {
    let layout = DiagramLayout::plat(word)?;
    Ok(match format {
        RenderFormat::Svg => layout.to_svg(),
        RenderFormat::Ascii => layout.to_ascii(),
    })
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(RenderFormat::Svg),
            "ascii" => Ok(RenderFormat::Ascii),
            _ => Err(Error::ConfigError { reason: format!("unknown format {s:?}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plat::component_count;
    use crate::word::StrandCount;

    fn w(kk: u16, tokens: &[i64]) -> BraidWord {
        BraidWord::from_tokens(StrandCount::new(kk).unwrap(), tokens).unwrap()
    }

    #[test]
    fn empty_braid_draws_radial_strands() {
        let svg = render_braid(&w(4, &[]), RenderFormat::Svg);
        assert_eq!(svg.matches("class=\"strand\"").count(), 4);
        assert_eq!(svg.matches("class=\"over\"").count(), 0);
        assert_eq!(svg.matches("class=\"under\"").count(), 0);
    }

    #[test]
    fn one_crossing_per_letter() {
        let svg = render_braid(&w(4, &[1]), RenderFormat::Svg);
        assert_eq!(svg.matches("class=\"over\"").count(), 1);
        // The under strand is split into two pieces by the gap.
        assert_eq!(svg.matches("class=\"under\"").count(), 2);
        let svg = render_braid(&w(4, &[1, -2, 4]), RenderFormat::Svg);
        assert_eq!(svg.matches("class=\"over\"").count(), 3);
    }

    #[test]
    fn rendering_is_byte_stable() {
        let word = w(6, &[1, -4, 6]);
        assert_eq!(
            render_braid(&word, RenderFormat::Svg),
            render_braid(&word, RenderFormat::Svg)
        );
        assert_eq!(
            render_plat(&word, RenderFormat::Svg).unwrap(),
            render_plat(&word, RenderFormat::Svg).unwrap()
        );
        assert_eq!(
            render_plat(&word, RenderFormat::Ascii).unwrap(),
            render_plat(&word, RenderFormat::Ascii).unwrap()
        );
    }

    #[test]
    fn rendering_is_literal_not_semantic() {
        let word = w(4, &[1, -1]);
        assert_ne!(
            render_braid(&word, RenderFormat::Svg),
            render_braid(&word.free_reduce(), RenderFormat::Svg)
        );
    }

    #[test]
    fn plat_adds_arcs_and_stubs() {
        let svg = render_plat(&w(4, &[]), RenderFormat::Svg).unwrap();
        assert_eq!(svg.matches("class=\"internal\"").count(), 2);
        assert_eq!(svg.matches("class=\"residual\"").count(), 4);
        assert_eq!(svg.matches("class=\"boundary\"").count(), 1);
    }

    #[test]
    fn plat_requires_even_strands() {
        assert!(render_plat(&w(3, &[1]), RenderFormat::Svg).is_err());
    }

    #[test]
    fn traced_curves_match_component_count() {
        for word in [
            w(2, &[]),
            w(4, &[]),
            w(4, &[2]),
            w(4, &[1, 2]),
            w(6, &[1]),
            w(6, &[5, -2, 3]),
            w(8, &[8, 1, 2, -1, -8]),
        ] {
            let layout = DiagramLayout::plat(&word).unwrap();
            assert_eq!(
                layout.traced_closed_curves().unwrap(),
                component_count(&word).unwrap(),
                "word {word:?}"
            );
        }
    }

    #[test]
    fn braid_layout_has_no_traced_curves() {
        assert_eq!(DiagramLayout::braid(&w(4, &[])).traced_closed_curves(), None);
    }

    #[test]
    fn ascii_grid_is_rectangular() {
        let text = render_plat(&w(4, &[1, 4]), RenderFormat::Ascii).unwrap();
        let widths: Vec<usize> = text.lines().map(|l| l.chars().count()).collect();
        assert!(!widths.is_empty());
        assert!(widths.windows(2).all(|p| p[0] == p[1]));
        let allowed = ['/', '\\', '|', '_', '.', ' '];
        assert!(text.chars().all(|c| c == '\n' || allowed.contains(&c)));
    }

    #[test]
    fn ascii_braid_shows_crossing_glyphs() {
        let text = render_braid(&w(4, &[1]), RenderFormat::Ascii);
        assert!(text.contains('\\'));
        assert!(text.contains('/'));
        assert!(text.contains('|'));
    }
}
