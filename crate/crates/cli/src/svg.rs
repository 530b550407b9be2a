//! Static SVG 1.1 line chart of the fractional-integral comparison.

use std::fmt::Write;

use gstt::fractional::ComparisonRow;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn distinct_orders(rows: &[ComparisonRow]) -> Vec<f64> {
    let mut orders: Vec<f64> = Vec::new();
    for row in rows {
        if !orders.contains(&row.order) {
            orders.push(row.order);
        }
    }
    orders
}

fn polyline(points: &[(f64, f64)], color: &str, dash: Option<&str>) -> String {
    let coords: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
    let dash = dash.map_or(String::new(), |d| format!(" stroke-dasharray=\"{d}\""));
    format!(
        "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"{dash} points=\"{}\"/>\n",
        coords.join(" ")
    )
}

/// Analytic curves (solid), Riemann–Liouville values (dashed with markers)
/// and fractional accumulation (dotted), one color per order.
pub fn comparison_chart(rows: &[ComparisonRow]) -> String {
    let t_max = rows.iter().map(|r| r.t).fold(0.0, f64::max).max(1e-12);
    let v_max = rows
        .iter()
        .flat_map(|r| [r.analytic, r.rl_numeric, r.fago])
        .fold(0.0, f64::max)
        .max(1e-12);
    let sx = |t: f64| MARGIN + t / t_max * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - v / v_max * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(svg, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(svg, "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">Fractional integral of t^2: analytic vs numeric</text>",
        WIDTH / 2.0
    );
    // axes
    let (x0, y0) = (sx(0.0), sy(0.0));
    let _ = writeln!(
        svg,
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{:.2}\" y2=\"{y0:.2}\" stroke=\"black\"/>",
        WIDTH - MARGIN
    );
    let _ = writeln!(
        svg,
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{MARGIN:.2}\" stroke=\"black\"/>"
    );
    for k in 0..=5 {
        let t = t_max * k as f64 / 5.0;
        let v = v_max * k as f64 / 5.0;
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{t:.3}</text>",
            sx(t),
            y0 + 18.0
        );
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{v:.3}</text>",
            x0 - 6.0,
            sy(v) + 4.0
        );
    }

    for (i, order) in distinct_orders(rows).into_iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let series: Vec<&ComparisonRow> = rows.iter().filter(|r| r.order == order).collect();
        let analytic: Vec<(f64, f64)> = series.iter().map(|r| (sx(r.t), sy(r.analytic))).collect();
        let numeric: Vec<(f64, f64)> = series.iter().map(|r| (sx(r.t), sy(r.rl_numeric))).collect();
        let accum: Vec<(f64, f64)> = series.iter().map(|r| (sx(r.t), sy(r.fago))).collect();
        svg.push_str(&polyline(&analytic, color, None));
        svg.push_str(&polyline(&numeric, color, Some("6,4")));
        svg.push_str(&polyline(&accum, color, Some("2,3")));
        for (x, y) in &numeric {
            let _ = writeln!(svg, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{color}\"/>");
        }
        let ly = MARGIN + 10.0 + 18.0 * i as f64;
        let _ = writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{ly:.2}\" font-family=\"sans-serif\" font-size=\"12\" fill=\"{color}\">r = {order}: analytic (solid), RL numeric (dashed), accumulation (dotted)</text>",
            MARGIN + 10.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
