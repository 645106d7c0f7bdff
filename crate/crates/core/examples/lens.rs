use curvedkit::symmetry::{detect, DEFAULT_TOL};
use curvedkit::{intersect, Geometry, Intersection, Isometry, Point, RegionSpec};

fn main() -> curvedkit::Result<()> {
    let g = Geometry::Hyperbolic;
    let disk = RegionSpec::Ball {
        geometry: g,
        center: Default::default(),
        radius: 0.9,
    }
    .build()?;
    let psi = Isometry::transvection(&Point::polar(g, 0.6, 0.8));
    if let Intersection::Region(r) = intersect(&disk, &Isometry::identity(g), &disk, &psi)? {
        let report = detect(&r, DEFAULT_TOL);
        assert!(report.is_centrally_symmetric && report.is_axially_symmetric);
        for f in &report.found {
            println!("{:?} residual {:.1e}", f.kind, f.residual);
        }
    }
    Ok(())
}
