mod common;

use common::rng;
use proptest::prelude::*;
use rand::Rng;
use seadronesim::math::Vec3;
use seadronesim::scene::bvh::{intersect_linear, Bvh, Triangle};
use seadronesim::scene::{
    assemble_scene, load_mesh, parse_obj, place_camera, water_preset, DistractorSpec, MeshSource,
    Ray, SceneError, SceneSpec, Turbidity, WaterColor, DEFAULT_OBJECT_SIZE,
};

#[test]
fn obj_single_triangle() {
    let m = parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n").unwrap();
    assert_eq!(m.mesh.triangle_count(), 1);
    assert_eq!(m.degenerate_dropped, 0);
    assert!((m.mesh.surface_area() - 0.5).abs() < 1e-12);
}

#[test]
fn obj_degenerate_faces_dropped() {
    let mut text = String::from("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 2 0 0\nf 1 2 3\n");
    for _ in 0..9 {
        text.push_str("f 1 2 4\n"); // collinear
    }
    let m = parse_obj(&text).unwrap();
    assert_eq!(m.mesh.triangle_count(), 1);
    assert_eq!(m.degenerate_dropped, 9);
}

#[test]
fn obj_unit_cube_area() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/unit_cube.obj");
    let m = load_mesh(&path).unwrap();
    assert_eq!(m.mesh.triangle_count(), 12);
    assert!((m.mesh.surface_area() - 6.0).abs() < 1e-12);
}

#[test]
fn obj_errors_name_the_line() {
    match parse_obj("v 0 0 0\nv 1 0 0\nf 1 2 7\n") {
        Err(SceneError::ObjParse { line: 3, .. }) => {}
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse_obj("v 0 0 0\n"),
        Err(SceneError::NoTriangles)
    ));
    assert!(matches!(
        parse_obj("v 0 0 x\n"),
        Err(SceneError::ObjParse { line: 1, .. })
    ));
    let err = load_mesh(std::path::Path::new("/nonexistent/x.obj")).unwrap_err();
    assert!(matches!(err, SceneError::Io { .. }));
}

#[test]
fn presets_are_valid_and_ordered() {
    for color in WaterColor::ALL {
        let (low, tint) = water_preset(color, Turbidity::Low);
        let (high, _) = water_preset(color, Turbidity::High);
        low.validate().unwrap();
        high.validate().unwrap();
        assert_eq!(low.sigma_a, high.sigma_a);
        for c in 0..3 {
            assert!(high.sigma_s[c] > low.sigma_s[c]);
            assert!(high.sigma_t()[c] > low.sigma_t()[c]);
            // Dominant tint channel is absorbed least.
            assert!(low.sigma_a[c] >= 0.0);
        }
        let dominant = (0..3)
            .max_by(|&a, &b| tint[a].partial_cmp(&tint[b]).unwrap())
            .unwrap();
        assert!((0..3).all(|c| low.sigma_a[dominant] <= low.sigma_a[c]));
    }
    assert!(seadronesim::scene::water_preset_named("purple", "low").is_err());
    assert!(seadronesim::scene::water_preset_named("Blue", "HIGH").is_ok());
}

#[test]
fn nadir_camera_pose() {
    let cam = place_camera(
        20.0,
        0.0,
        0.0,
        Vec3::new(1.0, 2.0, 0.0),
        60f64.to_radians(),
        416,
        416,
    )
    .unwrap();
    assert_eq!(cam.position(), Vec3::new(1.0, 2.0, 20.0));
    assert!((cam.forward() - Vec3::new(0.0, 0.0, -1.0)).length() < 1e-12);
    let (x, y) = cam.project(Vec3::new(1.0, 2.0, 0.0)).unwrap();
    assert!((x - 208.0).abs() < 1e-9 && (y - 208.0).abs() < 1e-9);
}

#[test]
fn camera_placement_errors() {
    let t = Vec3::ZERO;
    let fov = 1.0;
    let field = |r: Result<_, SceneError>| match r {
        Err(SceneError::Invalid { field, .. }) => field,
        other => panic!("{other:?}"),
    };
    assert_eq!(
        field(place_camera(-1.0, 0.0, 0.0, t, fov, 8, 8)),
        "camera.altitude_m"
    );
    assert_eq!(
        field(place_camera(0.0, 0.0, 0.0, t, fov, 8, 8)),
        "camera.altitude_m"
    );
    assert_eq!(
        field(place_camera(5.0, -1.0, 0.0, t, fov, 8, 8)),
        "camera.orbit_radius_m"
    );
    assert_eq!(
        field(place_camera(5.0, 0.0, 0.0, t, 0.0, 8, 8)),
        "camera.vertical_fov"
    );
    assert_eq!(
        field(place_camera(5.0, 0.0, 0.0, t, fov, 0, 8)),
        "camera.width"
    );
    assert_eq!(
        field(place_camera(
            5.0,
            0.0,
            0.0,
            Vec3::new(0.0, 0.0, 6.0),
            fov,
            8,
            8
        )),
        "camera.target"
    );
}

#[test]
fn assembly_counts() {
    let spec = SceneSpec::new(10.0);
    let scene = assemble_scene(&spec).unwrap();
    assert_eq!(scene.triangle_count(), 12);
    assert_eq!(scene.instances().len(), 1);
    assert!(scene.instances()[0].is_target);
    let b = scene.target_bounds().unwrap();
    assert!((b.extent() - DEFAULT_OBJECT_SIZE).length() < 1e-12);
    assert!((b.center().z).abs() < 1e-12, "floats at the waterline");

    let mut spec = SceneSpec::new(10.0);
    spec.distractors = (0..3)
        .map(|i| DistractorSpec::rock(2.0 + i as f64, 1.5, Vec3::splat(0.5), 0.3))
        .collect();
    let scene = assemble_scene(&spec).unwrap();
    assert_eq!(scene.triangle_count(), 12 * 4);
    assert_eq!(scene.instances().iter().filter(|i| i.is_target).count(), 1);
    for inst in &scene.instances()[1..] {
        assert!(
            (inst.bounds.min.z + 3.0).abs() < 1e-9,
            "rocks rest on the floor"
        );
    }
}

#[test]
fn assembly_rejects_overlap_and_invisible_object() {
    let mut spec = SceneSpec::new(10.0);
    spec.distractors
        .push(DistractorSpec::hill(0.0, 0.0, 1.0, 5.0));
    assert!(matches!(
        assemble_scene(&spec),
        Err(SceneError::DistractorOverlap { index: 0 })
    ));

    let mut spec = SceneSpec::new(10.0);
    spec.camera.target = Some(Vec3::new(50.0, 0.0, 0.0));
    spec.camera.vertical_fov_deg = 10.0;
    assert!(matches!(assemble_scene(&spec), Err(SceneError::NotVisible)));

    let mut spec = SceneSpec::new(10.0);
    spec.object.mesh = MeshSource::Sphere {
        radius: -1.0,
        segments: 16,
    };
    assert!(matches!(
        assemble_scene(&spec),
        Err(SceneError::Invalid { .. })
    ));
}

#[test]
fn scene_spec_json_round_trip() {
    let mut spec = SceneSpec::new(25.0);
    spec.distractors
        .push(DistractorSpec::rock(3.0, 3.0, Vec3::splat(0.4), 0.1));
    let back = SceneSpec::from_json_str(&spec.to_json_pretty()).unwrap();
    assert_eq!(back, spec);
    assert!(SceneSpec::from_json_str(r#"{"camera":{"altitude_m":10},"bogus":1}"#).is_err());
}

fn random_point(r: &mut impl Rng, s: f64) -> Vec3 {
    Vec3::new(
        r.random_range(-s..s),
        r.random_range(-s..s),
        r.random_range(-s..s),
    )
}

#[test]
fn bvh_agrees_with_linear_scan() {
    let mut r = rng(5);
    let tris: Vec<Triangle> = (0..400)
        .map(|_| {
            let c = random_point(&mut r, 5.0);
            Triangle::new(
                c + random_point(&mut r, 0.6),
                c + random_point(&mut r, 0.6),
                c + random_point(&mut r, 0.6),
            )
        })
        .collect();
    let bvh = Bvh::build(&tris);
    assert_eq!(bvh.triangle_count(), tris.len());
    let mut hits = 0;
    for _ in 0..10_000 {
        let origin = random_point(&mut r, 8.0);
        let target = random_point(&mut r, 4.0);
        let ray = Ray {
            origin,
            dir: (target - origin).normalized(),
        };
        let a = bvh.intersect(&tris, &ray, 1e-9, f64::INFINITY);
        let b = intersect_linear(&tris, &ray, 1e-9, f64::INFINITY);
        assert_eq!(a, b);
        assert_eq!(bvh.occluded(&tris, &ray, 1e-9, f64::INFINITY), b.is_some());
        hits += b.is_some() as usize;
    }
    assert!(hits > 1000, "rays should mostly hit, got {hits}");
}

proptest! {
    #[test]
    fn camera_fixates_on_target(
        altitude in 1.0f64..200.0,
        radius in 0.0f64..50.0,
        angle in -10.0f64..10.0,
        tx in -20.0f64..20.0,
        ty in -20.0f64..20.0,
        tz in -3.0f64..0.5,
    ) {
        let target = Vec3::new(tx, ty, tz);
        let cam = place_camera(altitude, radius, angle, target, 0.8, 640, 480).unwrap();
        let (x, y) = cam.project(target).unwrap();
        prop_assert!((x - 320.0).abs() < 1e-6 && (y - 240.0).abs() < 1e-6);
        prop_assert!((cam.position().z - altitude).abs() < 1e-9);
        let horizontal = ((cam.position().x - tx).powi(2) + (cam.position().y - ty).powi(2)).sqrt();
        prop_assert!((horizontal - radius).abs() < 1e-9);
        let q = cam.rotation();
        prop_assert!((q.norm() - 1.0).abs() < 1e-9);
        prop_assert!((q.rotate(-Vec3::Z) - cam.forward()).length() < 1e-9);
    }
}
