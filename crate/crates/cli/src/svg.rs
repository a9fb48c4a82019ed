//! Minimal self-contained SVG density overlay: two polylines, axes with a
//! few labeled ticks, and a legend. No external assets or fonts beyond the
//! generic sans-serif family.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 44.0;
const MARGIN_BOTTOM: f64 = 56.0;
const TICKS: usize = 5;
const LHS_COLOR: &str = "#1f6fb2";
const RHS_COLOR: &str = "#c2452d";

fn format_tick(v: f64) -> String {
    format!("{v:.4}")
        .trim_end_matches('0')
        .trim_end_matches('.')
        .to_string()
}

/// Renders the two curves over the shared grid. Both series must match the
/// grid length; the caller guarantees a non-empty, ascending grid.
pub fn density_overlay(
    title: &str,
    grid: &[f64],
    lhs: &[f64],
    rhs: &[f64],
    lhs_label: &str,
    rhs_label: &str,
) -> String {
    let x_lo = grid.first().copied().unwrap_or(0.0);
    let x_hi = grid.last().copied().unwrap_or(1.0);
    let x_span = if x_hi > x_lo { x_hi - x_lo } else { 1.0 };
    let y_hi = lhs
        .iter()
        .chain(rhs)
        .copied()
        .fold(0.0f64, f64::max)
        .max(1e-300)
        * 1.05;
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_x = |v: f64| MARGIN_LEFT + (v - x_lo) / x_span * plot_w;
    let to_y = |v: f64| MARGIN_TOP + (1.0 - v / y_hi) * plot_h;

    let polyline = |values: &[f64], color: &str, dash: &str| {
        let points: Vec<String> = grid
            .iter()
            .zip(values)
            .map(|(&x, &y)| format!("{:.2},{:.2}", to_x(x), to_y(y)))
            .collect();
        format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"{dash}/>\n",
            points.join(" ")
        )
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "  <text x=\"{:.1}\" y=\"26\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"16\">{title}</text>\n",
        MARGIN_LEFT + plot_w / 2.0
    ));

    for i in 0..=TICKS {
        let frac = i as f64 / TICKS as f64;
        let xv = x_lo + frac * x_span;
        let yv = frac * y_hi;
        let px = to_x(xv);
        let py = to_y(yv);
        svg.push_str(&format!(
            "  <line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#888\"/>\n",
            HEIGHT - MARGIN_BOTTOM,
            HEIGHT - MARGIN_BOTTOM + 5.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
             font-size=\"12\">{}</text>\n",
            HEIGHT - MARGIN_BOTTOM + 20.0,
            format_tick(xv)
        ));
        svg.push_str(&format!(
            "  <line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"#888\"/>\n",
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" \
             font-size=\"12\">{}</text>\n",
            MARGIN_LEFT - 9.0,
            py + 4.0,
            format_tick(yv)
        ));
    }
    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_LEFT}\" y1=\"{MARGIN_TOP}\" x2=\"{MARGIN_LEFT}\" y2=\"{:.1}\" \
         stroke=\"black\"/>\n",
        HEIGHT - MARGIN_BOTTOM
    ));
    svg.push_str(&format!(
        "  <line x1=\"{MARGIN_LEFT}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_BOTTOM,
        WIDTH - MARGIN_RIGHT,
        HEIGHT - MARGIN_BOTTOM
    ));

    svg.push_str(&polyline(lhs, LHS_COLOR, ""));
    svg.push_str(&polyline(rhs, RHS_COLOR, " stroke-dasharray=\"6 4\""));

    let legend_x = WIDTH - MARGIN_RIGHT - 220.0;
    for (row, (color, dash, label)) in [
        (LHS_COLOR, "", lhs_label),
        (RHS_COLOR, " stroke-dasharray=\"6 4\"", rhs_label),
    ]
    .iter()
    .enumerate()
    {
        let y = MARGIN_TOP + 14.0 + 20.0 * row as f64;
        svg.push_str(&format!(
            "  <line x1=\"{legend_x:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
             stroke=\"{color}\" stroke-width=\"2\"{dash}/>\n",
            legend_x + 30.0
        ));
        svg.push_str(&format!(
            "  <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\">\
             {label}</text>\n",
            legend_x + 38.0,
            y + 4.0
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
