//! Deterministic SVG rendering of landscapes.
//!
//! The plot area spans [0, δ₁] on the t-axis and [0, δ₁/2] vertically —
//! exactly the support and peak range of a landscape whose top level dies
//! at δ₁. Level 1 is drawn darkest and deeper levels fade toward the
//! background so the nesting reads at a glance. Output bytes depend only
//! on the input values: coordinates are formatted with fixed precision and
//! no timestamps or randomness are involved.

use fractalscape::{Landscape, PointCloud};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 56.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 48.0;

/// Darkest (level 1) and lightest (deepest level) stroke colors.
const NEAR: (u8, u8, u8) = (31, 58, 147);
const FAR: (u8, u8, u8) = (198, 213, 245);
const CLOUD_COLOR: &str = "#c0392b";

/// Everything needed to draw one landscape.
pub struct PlotSpec<'a> {
    pub landscape: &'a Landscape<f64>,
    /// Horizontal extent of the plot; the top level's death.
    pub delta_1: f64,
    pub title: &'a str,
    /// Optional point cloud layer: drawn as a rug on the t-axis for
    /// one-dimensional clouds and as a fitted inset for planar ones.
    pub cloud: Option<&'a PointCloud<f64>>,
}

pub fn render(spec: &PlotSpec) -> String {
    let span = if spec.delta_1 > 0.0 {
        spec.delta_1
    } else {
        1.0
    };
    let to_x = |t: f64| LEFT + t / span * (WIDTH - LEFT - RIGHT);
    let to_y = |v: f64| (HEIGHT - BOTTOM) - v / (span / 2.0) * (HEIGHT - TOP - BOTTOM);

    let mut out = String::with_capacity(16 * 1024);
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    out.push_str(&format!(
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"14\">{}</text>\n",
        px(WIDTH / 2.0),
        escape(spec.title)
    ));

    axes(&mut out, span, to_x, to_y);

    let count = spec.landscape.level_count();
    for (index, level) in spec.landscape.levels().iter().enumerate() {
        if level.is_zero() {
            continue;
        }
        let t = if count > 1 {
            index as f64 / (count - 1) as f64
        } else {
            0.0
        };
        let points: Vec<String> = level
            .breakpoints()
            .iter()
            .map(|&(x, v)| format!("{},{}", px(to_x(x)), px(to_y(v))))
            .collect();
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.4\" points=\"{}\"/>\n",
            blend(t),
            points.join(" ")
        ));
    }

    if let Some(cloud) = spec.cloud {
        match cloud.dim() {
            1 => rug_layer(&mut out, cloud, to_x),
            _ => inset_layer(&mut out, cloud),
        }
    }

    out.push_str("</svg>\n");
    out
}

fn axes(out: &mut String, span: f64, to_x: impl Fn(f64) -> f64, to_y: impl Fn(f64) -> f64) {
    let x0 = px(to_x(0.0));
    let x1 = px(to_x(span));
    let y0 = px(to_y(0.0));
    let y1 = px(to_y(span / 2.0));
    out.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>\n"
    ));
    out.push_str(&format!(
        "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>\n"
    ));
    for i in 0..=4 {
        let t = span * f64::from(i) / 4.0;
        let x = px(to_x(t));
        out.push_str(&format!(
            "<line x1=\"{x}\" y1=\"{y0}\" x2=\"{x}\" y2=\"{}\" stroke=\"black\"/>\n",
            px(to_y(0.0) + 5.0)
        ));
        out.push_str(&format!(
            "<text x=\"{x}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"11\">{}</text>\n",
            px(to_y(0.0) + 19.0),
            label(t)
        ));
    }
    for i in 0..=2 {
        let v = span / 2.0 * f64::from(i) / 2.0;
        let y = px(to_y(v));
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y}\" x2=\"{x0}\" y2=\"{y}\" stroke=\"black\"/>\n",
            px(to_x(0.0) - 5.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"11\">{}</text>\n",
            px(to_x(0.0) - 9.0),
            px(to_y(v) + 4.0),
            label(v)
        ));
    }
    out.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"12\">t</text>\n",
        px((to_x(0.0) + to_x(span)) / 2.0),
        px(HEIGHT - 10.0)
    ));
}

/// One-dimensional clouds sit directly on the t-axis.
fn rug_layer(out: &mut String, cloud: &PointCloud<f64>, to_x: impl Fn(f64) -> f64) {
    for p in cloud.iter_points() {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"2.2\" fill=\"{CLOUD_COLOR}\" \
             fill-opacity=\"0.75\"/>\n",
            px(to_x(p[0])),
            px(HEIGHT - BOTTOM)
        ));
    }
}

/// Planar clouds are drawn in a fitted inset so they never collide with
/// the landscape axes, whatever their extent.
fn inset_layer(out: &mut String, cloud: &PointCloud<f64>) {
    let side = 140.0;
    let pad = 10.0;
    let origin_x = WIDTH - RIGHT - side - 6.0;
    let origin_y = TOP + 6.0;
    out.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{side}\" height=\"{side}\" fill=\"white\" \
         stroke=\"#888888\"/>\n",
        px(origin_x),
        px(origin_y)
    ));
    let (mut lo_x, mut hi_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut lo_y, mut hi_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in cloud.iter_points() {
        lo_x = lo_x.min(p[0]);
        hi_x = hi_x.max(p[0]);
        lo_y = lo_y.min(p[1]);
        hi_y = hi_y.max(p[1]);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
    let scale = (side - 2.0 * pad) / span;
    let center = |lo: f64, hi: f64| (side - (hi - lo) * scale) / 2.0;
    let off_x = origin_x + center(lo_x, hi_x);
    let off_y = origin_y + center(lo_y, hi_y);
    for p in cloud.iter_points() {
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"1.8\" fill=\"{CLOUD_COLOR}\" \
             fill-opacity=\"0.75\"/>\n",
            px(off_x + (p[0] - lo_x) * scale),
            px(off_y + (hi_y - p[1]) * scale)
        ));
    }
}

/// Linear color blend from the darkest stroke to the lightest.
fn blend(t: f64) -> String {
    let channel =
        |a: u8, b: u8| -> u8 { (f64::from(a) + t * (f64::from(b) - f64::from(a))).round() as u8 };
    format!(
        "#{:02x}{:02x}{:02x}",
        channel(NEAR.0, FAR.0),
        channel(NEAR.1, FAR.1),
        channel(NEAR.2, FAR.2)
    )
}

/// Pixel coordinates with fixed two-decimal precision (deterministic).
fn px(v: f64) -> String {
    format!("{v:.2}")
}

/// Tick labels: four decimals with trailing zeros trimmed.
fn label(v: f64) -> String {
    let mut s = format!("{v:.4}");
    while s.contains('.') && (s.ends_with('0') || s.ends_with('.')) {
        s.pop();
    }
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use fractalscape::Preset;

    #[test]
    fn rendering_is_reproducible_and_well_formed() {
        let op = Preset::Cantor3.operator::<f64>();
        let landscape = op.fixed_point(9).unwrap();
        let spec = PlotSpec {
            landscape: &landscape,
            delta_1: op.head()[0],
            title: "cantor3 <test> & more",
            cloud: None,
        };
        let a = render(&spec);
        let b = render(&spec);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<polyline").count(), 9);
        assert!(a.contains("&lt;test&gt; &amp; more"));
    }

    #[test]
    fn cloud_layers_choose_rug_or_inset_by_dimension() {
        let line = Preset::Cantor3;
        let flat = line.ifs::<f64>();
        let cloud = flat.iterate(&flat.seed_points(), 2, 1 << 20).unwrap();
        let op = line.operator::<f64>();
        let landscape = op.fixed_point(4).unwrap();
        let with_rug = render(&PlotSpec {
            landscape: &landscape,
            delta_1: op.head()[0],
            title: "rug",
            cloud: Some(&cloud),
        });
        assert_eq!(with_rug.matches("<circle").count(), cloud.len());
        assert!(!with_rug.contains("<rect x="));

        let plane = Preset::Triangle;
        let ifs = plane.ifs::<f64>();
        let cloud2 = ifs.iterate(&ifs.seed_points(), 2, 1 << 20).unwrap();
        let op2 = plane.operator::<f64>();
        let landscape2 = op2.fixed_point(4).unwrap();
        let with_inset = render(&PlotSpec {
            landscape: &landscape2,
            delta_1: op2.head()[0],
            title: "inset",
            cloud: Some(&cloud2),
        });
        assert_eq!(with_inset.matches("<circle").count(), cloud2.len());
        assert!(with_inset.contains("<rect x="));
    }

    #[test]
    fn labels_are_trimmed() {
        assert_eq!(label(0.0), "0");
        assert_eq!(label(0.5), "0.5");
        assert_eq!(label(1.0 / 3.0), "0.3333");
        assert_eq!(label(2.0), "2");
    }
}
