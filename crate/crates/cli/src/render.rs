//! SVG output. Grid rows grow upward, so row 0 is drawn at the bottom.
//! Every polyline carries its data in `data-*` attributes, which lets the
//! drawing be read back without loss.

use std::fmt::Write;

use cpg::{CpgRepresentation, OrthogonalEmbedding};

const CELL: i64 = 40;
const MARGIN: i64 = 30;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Canvas {
    min_x: i64,
    max_y: i64,
    body: String,
    width: i64,
    height: i64,
}

impl Canvas {
    fn new(min_x: i64, max_x: i64, min_y: i64, max_y: i64) -> Self {
        Canvas {
            min_x,
            max_y,
            body: String::new(),
            width: (max_x - min_x) * CELL + 2 * MARGIN,
            height: (max_y - min_y) * CELL + 2 * MARGIN,
        }
    }

    fn px(&self, x: i64, y: i64) -> (i64, i64) {
        ((x - self.min_x) * CELL + MARGIN, (self.max_y - y) * CELL + MARGIN)
    }

    fn grid(&mut self, cols: i64, rows: i64) {
        for c in 0..cols {
            let (x0, y0) = self.px(self.min_x + c, self.max_y);
            let (_, y1) = self.px(self.min_x + c, self.max_y - (rows - 1));
            writeln!(self.body, r##"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#ddd" stroke-width="1"/>"##).unwrap();
        }
        for r in 0..rows {
            let (x0, y0) = self.px(self.min_x, self.max_y - r);
            let (x1, _) = self.px(self.min_x + cols - 1, self.max_y - r);
            writeln!(self.body, r##"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="#ddd" stroke-width="1"/>"##).unwrap();
        }
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}

/// One stroked polyline per path, endpoints marked with dots.
pub fn rep_svg(rep: &CpgRepresentation) -> String {
    let mut c = Canvas::new(0, rep.cols.saturating_sub(1) as i64, 0, rep.rows.saturating_sub(1) as i64);
    c.grid(rep.cols as i64, rep.rows as i64);
    let mut labels: Vec<&str> = rep.labels().collect();
    labels.sort_unstable();
    for path in &rep.paths {
        let color = PALETTE[labels.binary_search(&path.vertex.as_str()).unwrap_or(0) % PALETTE.len()];
        let pts: Vec<(i64, i64)> = path.corners.iter().map(|p| c.px(p.col as i64, p.row as i64)).collect();
        let points = pts.iter().map(|(x, y)| format!("{x},{y}")).collect::<Vec<_>>().join(" ");
        let corners = path.corners.iter().map(|p| format!("{},{}", p.row, p.col)).collect::<Vec<_>>().join(" ");
        writeln!(
            c.body,
            r#"<polyline class="path" data-vertex="{}" data-corners="{corners}" points="{points}" fill="none" stroke="{color}" stroke-width="4"/>"#,
            escape(&path.vertex)
        )
        .unwrap();
        for &(x, y) in [pts[0], pts[pts.len() - 1]].iter() {
            writeln!(c.body, r#"<circle class="endpoint" cx="{x}" cy="{y}" r="5" fill="{color}"/>"#).unwrap();
        }
        let (lx, ly) = label_anchor(&pts);
        writeln!(c.body, r#"<text x="{lx}" y="{ly}" font-family="sans-serif" font-size="12" fill="{color}">{}</text>"#, escape(&path.vertex)).unwrap();
    }
    writeln!(c.body, r#"<desc>rows={} cols={}</desc>"#, rep.rows, rep.cols).unwrap();
    c.finish()
}

/// Midpoint of the first segment, nudged off the line.
fn label_anchor(pts: &[(i64, i64)]) -> (i64, i64) {
    let (a, b) = (pts[0], pts[1]);
    ((a.0 + b.0) / 2 + 4, (a.1 + b.1) / 2 - 6)
}

/// Vertices as labelled discs, edges as thin polylines.
pub fn embedding_svg(emb: &OrthogonalEmbedding) -> String {
    let all = emb.vertices.values().copied().chain(emb.edges.iter().flat_map(|e| e.polyline.iter().copied()));
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0, 0, 0, 0);
    for (i, (x, y)) in all.enumerate() {
        if i == 0 {
            (min_x, max_x, min_y, max_y) = (x, x, y, y);
        }
        (min_x, max_x, min_y, max_y) = (min_x.min(x), max_x.max(x), min_y.min(y), max_y.max(y));
    }
    let mut c = Canvas::new(min_x, max_x, min_y, max_y);
    c.grid(max_x - min_x + 1, max_y - min_y + 1);
    for e in &emb.edges {
        let points = e.polyline.iter().map(|&(x, y)| c.px(x, y)).map(|(x, y)| format!("{x},{y}")).collect::<Vec<_>>().join(" ");
        writeln!(
            c.body,
            r##"<polyline class="edge" data-u="{}" data-v="{}" points="{points}" fill="none" stroke="#333" stroke-width="2"/>"##,
            escape(&e.u),
            escape(&e.v)
        )
        .unwrap();
    }
    for (v, &(x, y)) in &emb.vertices {
        let (px, py) = c.px(x, y);
        writeln!(c.body, r##"<circle class="vertex" data-vertex="{}" cx="{px}" cy="{py}" r="7" fill="#1f77b4"/>"##, escape(v)).unwrap();
        writeln!(c.body, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#, px + 8, py - 8, escape(v)).unwrap();
    }
    c.finish()
}
