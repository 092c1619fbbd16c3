//! SVG rendering of solved instances. Terminals are filled black circles,
//! Steiner points white circles with a stroke, edges solid lines. Inputs in
//! three or more dimensions are projected orthographically onto the first
//! two coordinates.

use steiner_core::{build_tree, Solution};

use crate::instance::Instance;

/// Render `solution` over `instance` as a standalone SVG document.
pub fn render_svg(instance: &Instance, solution: &Solution) -> String {
    let mut tree = build_tree(&instance.points, solution.topology.as_slice())
        .expect("a solution's topology is valid for its instance");
    for (i, p) in solution.steiner_points.iter().enumerate() {
        tree.set_steiner_position(i, p.coords());
    }

    let project = |coords: &[f64]| (coords[0], coords[1]);
    let mut min = (f64::INFINITY, f64::INFINITY);
    let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let n = instance.points.len();
    let node_count = n + tree.steiner_count();
    for g in 0..node_count {
        let (x, y) = project(tree.position(g));
        min = (min.0.min(x), min.1.min(y));
        max = (max.0.max(x), max.1.max(y));
    }
    let span = ((max.0 - min.0).max(1e-9), (max.1 - min.1).max(1e-9));
    let margin = 0.05 * span.0.max(span.1);
    let view = (
        min.0 - margin,
        min.1 - margin,
        span.0 + 2.0 * margin,
        span.1 + 2.0 * margin,
    );

    // Flip y so the conventional mathematical orientation is preserved on
    // the screen's downward y axis.
    let flip = |y: f64| view.1 + view.3 - (y - view.1);
    let scale = view.2.max(view.3);
    let stroke = 0.004 * scale;
    let r_terminal = 0.012 * scale;
    let r_steiner = 0.010 * scale;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" \
         viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
        view.0, view.1, view.2, view.3
    ));
    svg.push_str(&format!(
        "  <title>{} (length {:.9})</title>\n",
        instance.name, solution.length
    ));
    for e in 1..=tree.edge_count() {
        let [a, b] = tree.edge_endpoints(e);
        let (x1, y1) = project(tree.position(a));
        let (x2, y2) = project(tree.position(b));
        svg.push_str(&format!(
            "  <line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" \
             stroke=\"black\" stroke-width=\"{:.6}\"/>\n",
            x1,
            flip(y1),
            x2,
            flip(y2),
            stroke
        ));
    }
    for g in 0..n {
        let (x, y) = project(tree.position(g));
        svg.push_str(&format!(
            "  <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"black\"/>\n",
            x,
            flip(y),
            r_terminal
        ));
    }
    for i in 0..tree.steiner_count() {
        let (x, y) = project(tree.steiner_position(i));
        svg.push_str(&format!(
            "  <circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{:.6}\" fill=\"white\" \
             stroke=\"black\" stroke-width=\"{:.6}\"/>\n",
            x,
            flip(y),
            r_steiner,
            stroke
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
