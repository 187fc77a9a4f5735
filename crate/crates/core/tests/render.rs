use realflow::render::{
    geodesics_cross, render_affine_rank3, render_hyperbolic_rank3, render_rank2, GeodesicArc, RenderOptions,
};
use realflow::{catalog, CoxeterSystem, FlowAssignment, Region, RootVec};

fn region(name: &str, r: usize) -> Region {
    Region::enumerate(CoxeterSystem::new(catalog::parse(name).unwrap()), r).unwrap()
}

fn parse_svg(text: &str) -> roxmltree::Document<'_> {
    let doc = roxmltree::Document::parse(text).expect("well-formed svg");
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    doc
}

fn count(doc: &roxmltree::Document, tag: &str, class: &str) -> usize {
    doc.descendants().filter(|n| n.tag_name().name() == tag && n.attribute("class") == Some(class)).count()
}

#[test]
fn svgs_parse_and_are_deterministic() {
    let opts = RenderOptions::default();
    let hyp = region("A_hyp:1", 4);
    let flow = FlowAssignment::random(&hyp, 4);
    let a = render_hyperbolic_rank3(&hyp, Some(&flow), &opts).unwrap().doc.to_svg_string();
    let b = render_hyperbolic_rank3(&region("A_hyp:1", 4), Some(&flow), &opts).unwrap().doc.to_svg_string();
    assert_eq!(a, b);
    let doc = parse_svg(&a);
    assert_eq!(count(&doc, "circle", "alcove"), hyp.len());
    assert_eq!(count(&doc, "polygon", "arrow"), hyp.interior_walls().count());

    let aff = region("A_tilde:2", 4);
    let r = render_affine_rank3(&aff, Some(&FlowAssignment::bruhat(&aff)), &opts).unwrap();
    let text = r.doc.to_svg_string();
    let doc = parse_svg(&text);
    assert_eq!(count(&doc, "polygon", "alcove"), aff.len());
    assert_eq!(count(&doc, "polygon", "arrow"), aff.interior_walls().count());

    let k3 = CoxeterSystem::new(catalog::parse("K:3").unwrap());
    parse_svg(&render_rank2(&k3, 3.0, 6, &opts).unwrap().doc.to_svg_string());
}

#[test]
fn custom_palette_reaches_the_output() {
    let opts = RenderOptions { wall_color: "#123456".into(), size: 400.0, ..Default::default() };
    let text = render_affine_rank3(&region("A_tilde:2", 2), None, &opts).unwrap().doc.to_svg_string();
    assert!(text.contains("#123456"));
    assert!(text.contains("width=\"400\""));
}

#[test]
fn geodesics_are_orthogonal_to_the_boundary() {
    for name in ["A_hyp:1", "A_tilde:2,1", "A_tilde:2,3"] {
        let r = render_hyperbolic_rank3(&region(name, 4), None, &RenderOptions::default()).unwrap();
        for (_, g) in &r.geodesics {
            assert!(g.orthogonality_defect().abs() <= 1e-6, "{name}");
            let (a, b) = g.endpoints();
            assert!((a[0].hypot(a[1]) - 1.0).abs() < 1e-9 && (b[0].hypot(b[1]) - 1.0).abs() < 1e-9);
        }
        assert!(r.centres.iter().all(|p| p[0].hypot(p[1]) < 1.0));
    }
}

#[test]
fn free_product_geodesics_never_meet() {
    let r = render_hyperbolic_rank3(&region("A_tilde:2,3", 3), None, &RenderOptions::default()).unwrap();
    assert!(r.geodesics.len() > 10);
    for (i, (_, g)) in r.geodesics.iter().enumerate() {
        for (_, h) in &r.geodesics[i + 1..] {
            assert!(!geodesics_cross(g, h, 1e-9));
        }
    }
}

/// Meeting point of two crossing geodesics. A circle orthogonal to the
/// boundary is `|p|² − 2c·p + 1 = 0`, so two of them meet on the line
/// `(c₁ − c₂)·p = 0` through the origin, at parameters `t` and `1/t`.
fn meet(g: &GeodesicArc, h: &GeodesicArc) -> [f64; 2] {
    let (dir, c) = match (g, h) {
        (GeodesicArc::Diameter { .. }, GeodesicArc::Diameter { .. }) => return [0.0, 0.0],
        (GeodesicArc::Diameter { a, .. }, GeodesicArc::Circle { center, .. })
        | (GeodesicArc::Circle { center, .. }, GeodesicArc::Diameter { a, .. }) => (*a, *center),
        (GeodesicArc::Circle { center: c1, .. }, GeodesicArc::Circle { center: c2, .. }) => {
            let d = [c1[0] - c2[0], c1[1] - c2[1]];
            let n = d[0].hypot(d[1]);
            ([-d[1] / n, d[0] / n], *c1)
        }
    };
    let b = c[0] * dir[0] + c[1] * dir[1];
    let t = b - b.signum() * (b * b - 1.0).sqrt();
    [t * dir[0], t * dir[1]]
}

#[test]
fn square_flat_walls_cross_once() {
    // vertex 0 is the hyperbolic node; with vertex 2 it spans a square flat
    let reg = region("A_hyp:1", 4);
    let r = render_hyperbolic_rank3(&reg, None, &RenderOptions::default()).unwrap();
    let find = |root: &RootVec| r.geodesics.iter().find(|(b, _)| b == root).map(|(_, g)| g.clone()).unwrap();
    let (g0, g2) = (find(&RootVec(vec![1, 0, 0])), find(&RootVec(vec![0, 0, 1])));
    assert!(geodesics_cross(&g0, &g2, 1e-9));
    let p = meet(&g0, &g2);
    assert!(p[0].hypot(p[1]) < 1.0);
    assert!(g0.defect_at(p) < 1e-9 && g2.defect_at(p) < 1e-9);
    let through = r.geodesics.iter().filter(|(_, g)| g.defect_at(p) < 1e-6).count();
    assert_eq!(through, 2);
}

#[test]
fn rank_two_pictures() {
    let opts = RenderOptions::default();
    let k = |m: u32| CoxeterSystem::new(catalog::parse(&format!("K:{m}")).unwrap());
    // three positive roots of A2, each hyperplane meeting the ellipse twice
    assert_eq!(render_rank2(&k(1), 1.5, 6, &opts).unwrap().dots, 6);
    let k2 = render_rank2(&k(2), 3.0, 6, &opts).unwrap();
    assert_eq!(k2.doc.count_class("level"), 2);
    assert!(render_rank2(&k(3), 3.0, 6, &opts).unwrap().dots > 6);
    let a2 = CoxeterSystem::new(catalog::parse("A_tilde:2").unwrap());
    assert!(render_rank2(&a2, 3.0, 6, &opts).is_err());
}

#[test]
fn wrong_types_are_rejected() {
    let opts = RenderOptions::default();
    assert!(render_affine_rank3(&region("A_hyp:1", 2), None, &opts).is_err());
    assert!(render_hyperbolic_rank3(&region("A_tilde:2", 2), None, &opts).is_err());
    assert!(render_hyperbolic_rank3(&region("A_hyp:2", 2), None, &opts).is_err());
}
