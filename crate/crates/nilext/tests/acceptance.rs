//! Acceptance suite: every criterion below is pinned to its exact expected
//! values and runs against the shipped catalog files. Each test prints one
//! `criterion NN ... PASS` line on success; tolerances are exact equality
//! throughout (the kernel has no floating point anywhere).

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use nilext::catalog::{sample_assignments, verify_catalog, verify_entry};
use nilext::tabledsl::{parse, parse_catalog, serialize, Presentation, WitnessAnnotation};
use nilext_core::algebra::IdentityKind;
use nilext_core::autaction::AutMap;
use nilext_core::cohomology::{
    cd_cocycle_space, class_coords, coboundary_space, h2_dims, SymCocycle,
};
use nilext_core::extension::{central_extend, split_annihilator, transport};
use nilext_core::linalg::{Matrix, Subspace};
use nilext_core::poly::{Poly, RingRef};
use nilext_core::scalar::Scalar;
use nilext_core::sympair::pair_count;
use nilext_core::AlgebraTable;

fn catalog_file(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

fn load(name: &str) -> Vec<Presentation> {
    parse_catalog(&catalog_file(name)).expect("catalog parses")
}

fn load_all() -> Vec<Presentation> {
    let mut all = load("dim3.alg");
    all.extend(load("dim4.alg"));
    all.extend(load("dim5.alg"));
    all
}

fn entry<'a>(entries: &'a [Presentation], name: &str) -> &'a Presentation {
    entries
        .iter()
        .find(|p| p.name == name)
        .unwrap_or_else(|| panic!("entry {name} missing"))
}

fn delta(ring: &RingRef, n: usize, i: usize, j: usize) -> SymCocycle {
    SymCocycle::delta(ring, n, i - 1, j - 1)
}

/// Structure constants compared as field elements, ignoring ring parameter
/// bookkeeping ("equal as literal tables").
fn tables_equal_as_constants(a: &AlgebraTable, b: &AlgebraTable) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    for (i, j) in nilext_core::sympair::pairs(a.dim()) {
        let pa = a.basis_product(i, j);
        let pb = b.basis_product(i, j);
        for k in 0..a.dim() {
            match (pa[k].as_constant(), pb[k].as_constant()) {
                (Some(x), Some(y)) => {
                    if x.as_rational() != y.as_rational() {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

#[test]
fn criterion_01_cohomology_regression() {
    let entries = load_all();
    // (entry, expected h2 dims, H2_D basis classes in (i, j) pairs)
    type BasisClasses = &'static [&'static [(usize, usize)]];
    let cases: [(&str, (usize, usize), BasisClasses); 4] = [
        ("N3s_02", (4, 2), &[&[(1, 3)], &[(2, 2)]]),
        ("N3s_04", (4, 1), &[&[(1, 2)]]),
        (
            "N4s_02",
            (8, 5),
            &[&[(1, 3)], &[(2, 2)], &[(1, 4)], &[(2, 4)], &[(4, 4)]],
        ),
        (
            "N4s_04",
            (8, 4),
            &[&[(1, 2)], &[(1, 4)], &[(2, 4)], &[(4, 4)]],
        ),
    ];
    for (name, dims, basis) in cases {
        let p = entry(&entries, name);
        let table = p.to_table().expect("table");
        assert_eq!(h2_dims(&table).unwrap(), dims, "{name} h2 dims");
        let b2 = coboundary_space(&table).unwrap();
        let z2d = cd_cocycle_space(&table).unwrap();
        // stated basis classes: nonzero and independent mod B^2, inside Z2_D
        let mut reduced_rows = Vec::new();
        for combo in basis {
            let mut theta = SymCocycle::zero(&p.ring, p.dim, 1);
            for &(i, j) in combo.iter() {
                theta = theta.add(&delta(&p.ring, p.dim, i, j)).unwrap();
            }
            let scalars: Vec<Scalar> = theta
                .component(0)
                .iter()
                .map(|q| q.as_constant().unwrap())
                .collect();
            assert!(z2d.contains_vector(&scalars), "{name}: class not in Z2_D");
            let red = class_coords(&b2, &theta).unwrap();
            assert!(
                red[0].iter().any(|q| !q.is_zero()),
                "{name}: class reduces to zero"
            );
            reduced_rows.push(
                red[0]
                    .iter()
                    .map(|q| q.as_constant().unwrap())
                    .collect::<Vec<_>>(),
            );
        }
        let span = Subspace::from_spanning(&p.ring, pair_count(p.dim), reduced_rows);
        assert_eq!(span.dim(), basis.len(), "{name}: classes dependent");
    }
    println!("criterion 01 cohomology regression: PASS");
}

#[test]
fn criterion_02_equality_flag_table() {
    // the published equality column for all 23 CD entries
    let expected: [(&str, bool); 23] = [
        ("N3s_01", true),
        ("N3s_02", false),
        ("N3s_03", true),
        ("N3s_04", false),
        ("N4s_01", true),
        ("N4s_02", false),
        ("N4s_03", true),
        ("N4s_04", false),
        ("N4s_05", true),
        ("N4s_06", true),
        ("N4s_07", true),
        ("N4s_08", false),
        ("N4s_09", false),
        ("N4s_10", false),
        ("N4s_11", false),
        ("N4s_12", false),
        ("N4s_13", false),
        ("N4s_14", false),
        ("N4s_15", false),
        ("N4s_16", false),
        ("N4s_17", false),
        ("N4s_18", false),
        ("N4s_19", false),
    ];
    let mut entries = load("dim3.alg");
    entries.extend(load("dim4.alg"));
    for (name, equal) in expected {
        let p = entry(&entries, name);
        let table = p.to_table().unwrap();
        for assignment in sample_assignments(p).unwrap() {
            let spec = table.specialize(&assignment).unwrap();
            let (h2c, h2d) = h2_dims(&spec).unwrap();
            assert_eq!((h2c == h2d), equal, "{name} at {assignment:?}");
        }
        assert_eq!(p.expect.h2_equal, Some(equal), "{name} declared flag");
    }
    println!("criterion 02 equality-flag table: PASS");
}

#[test]
fn criterion_03_cd_split() {
    let entries = load_all();
    let mut starred = 0;
    let mut unstarred = 0;
    for p in &entries {
        let table = p.to_table().unwrap();
        let report = table.check_identity(IdentityKind::Cd).unwrap();
        let is_starred = p.name.starts_with("N3s_") || p.name.starts_with("N4s_");
        if is_starred {
            assert!(report.holds, "{} must satisfy the CD identity", p.name);
            starred += 1;
        } else {
            assert!(!report.holds, "{} must fail the CD identity", p.name);
            let w = report.witness.expect("defect witness required");
            assert_eq!(w.tuple.len(), 4);
            assert!(
                w.defect.iter().any(|q| !q.is_zero()),
                "{}: defect must be nonzero as a polynomial",
                p.name
            );
            unstarred += 1;
        }
    }
    assert_eq!(starred, 23);
    assert_eq!(unstarred, 11 + 405);
    println!("criterion 03 cd split ({starred} CD / {unstarred} non-CD): PASS");
}

#[test]
fn criterion_04_extension_reproduction() {
    // Base and targets pinned as literal tables.
    let base = parse("algebra B dim 3\ne1*e1 = e2\ne1*e2 = e3\n").unwrap();
    let btab = base.to_table().unwrap();

    let by_d22 = central_extend(&btab, &[delta(&base.ring, 3, 2, 2)]).unwrap();
    let n4s_08 = parse("algebra T dim 4\ne1*e1 = e2\ne1*e2 = e3\ne2*e2 = e4\n")
        .unwrap()
        .to_table()
        .unwrap();
    assert!(tables_equal_as_constants(&by_d22, &n4s_08));

    let by_d13 = central_extend(&btab, &[delta(&base.ring, 3, 1, 3)]).unwrap();
    let n4s_13 = parse("algebra T dim 4\nparams lambda\ne1*e1 = e2\ne1*e2 = e3\ne1*e3 = e4\ne2*e2 = lambda e4\n").unwrap();
    let mut at_zero = nilext_core::poly::Assignment::new();
    at_zero.insert("lambda".into(), Scalar::zero(n4s_13.ring.field()));
    let n4s_13_0 = n4s_13.to_table().unwrap().specialize(&at_zero).unwrap();
    assert!(tables_equal_as_constants(&by_d13, &n4s_13_0));
    println!("criterion 04 extension reproduction: PASS");
}

#[test]
fn criterion_05_split_round_trip() {
    let entries = load_all();
    let mut count = 0;
    for p in &entries {
        let table = p.to_table().unwrap();
        for assignment in sample_assignments(p).unwrap() {
            let spec = table.specialize(&assignment).unwrap();
            let ann = spec.annihilator().unwrap();
            if ann.dim() == 0 {
                continue;
            }
            let split = split_annihilator(&spec).unwrap();
            let rebuilt = central_extend(&split.quotient, &split.cocycles).unwrap();
            let transported = transport(&spec, &split.change_of_basis).unwrap();
            assert_eq!(transported, rebuilt, "{} at {assignment:?}", p.name);
            count += 1;
        }
    }
    assert!(count > 400, "round trip exercised on {count} specializations");
    println!("criterion 05 split round trip ({count} cases): PASS");
}

#[test]
fn criterion_06_annihilator_decomposition() {
    let mut entries = load("dim3.alg");
    entries.extend(load("dim4.alg"));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for p in entries.iter().filter(|p| p.name.contains('s')) {
        let table = p.to_table().unwrap();
        let assignment = &sample_assignments(p).unwrap()[0];
        let spec = table.specialize(assignment).unwrap();
        let n = spec.dim();
        let ring = spec.ring();
        let ann_a = spec.annihilator().unwrap();
        for _ in 0..100 {
            let coords: Vec<Poly> = (0..pair_count(n))
                .map(|_| Poly::from_integer(ring, rng.gen_range(-3..=3)))
                .collect();
            let theta = SymCocycle::from_components(ring, n, vec![coords]).unwrap();
            let ext = central_extend(&spec, std::slice::from_ref(&theta)).unwrap();
            let lhs = ext.annihilator().unwrap();
            let meet = nilext_core::cohomology::ann_of_cocycle(&spec, &theta)
                .unwrap()
                .intersect(&ann_a)
                .unwrap();
            let zero = Scalar::zero(ring.field());
            let mut rows: Vec<Vec<Scalar>> = meet
                .basis()
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    w.push(zero.clone());
                    w
                })
                .collect();
            let mut new_vec = vec![zero.clone(); n + 1];
            new_vec[n] = Scalar::one(ring.field());
            rows.push(new_vec);
            let rhs = Subspace::from_spanning(ring, n + 1, rows);
            assert_eq!(lhs, rhs, "{}", p.name);
            assert_eq!(rhs.dim(), meet.dim() + 1, "{}: direct sum", p.name);
        }
    }
    println!("criterion 06 annihilator decomposition law: PASS");
}

#[test]
fn criterion_07_cocycle_subspace_laws() {
    // The CD-cocycle subspace belongs to the theory of CD base algebras:
    // a coboundary `delta f` satisfies the CD cocycle condition iff `f`
    // kills every CD defect of the table, so `B2 inside Z2_D` (and with it
    // representative independence of the CD-class test) holds exactly on
    // the CD entries. `dim B2 = dim A^2` holds for every table.
    let entries = load_all();
    let mut rng = StdRng::seed_from_u64(0xc0c1c2e);
    for p in &entries {
        let table = p.to_table().unwrap();
        let is_cd_base = p.name.starts_with("N3s_") || p.name.starts_with("N4s_");
        let assignments = sample_assignments(p).unwrap();
        for assignment in &assignments {
            let spec = table.specialize(assignment).unwrap();
            let n = spec.dim();
            let ring = spec.ring();
            let b2 = coboundary_space(&spec).unwrap();
            let (chain, _) = spec.powers().unwrap();
            assert_eq!(b2.dim(), chain[1].dim(), "{}: dim B2 != dim A^2", p.name);
            if !is_cd_base {
                continue;
            }
            let z2d = cd_cocycle_space(&spec).unwrap();
            assert!(z2d.contains(&b2).unwrap(), "{}: B2 not inside Z2_D", p.name);

            // is_cd_class is representative-independent: shifting by a random
            // coboundary never changes Z2_D membership.
            for _ in 0..50 {
                let coords: Vec<Scalar> = (0..pair_count(n))
                    .map(|_| Scalar::from_integer(ring.field(), rng.gen_range(-2..=2)))
                    .collect();
                let in_z2d = z2d.contains_vector(&coords);
                // random element of B^2
                let mut shift = vec![Scalar::zero(ring.field()); pair_count(n)];
                for row in b2.basis() {
                    let c = Scalar::from_integer(ring.field(), rng.gen_range(-2..=2));
                    for (slot, v) in shift.iter_mut().zip(row) {
                        *slot = slot.checked_add(&v.checked_mul(&c).unwrap()).unwrap();
                    }
                }
                let shifted: Vec<Scalar> = coords
                    .iter()
                    .zip(&shift)
                    .map(|(a, b)| a.checked_add(b).unwrap())
                    .collect();
                assert_eq!(
                    z2d.contains_vector(&shifted),
                    in_z2d,
                    "{}: coboundary shift changed CD-class membership",
                    p.name
                );
            }
        }
    }
    println!("criterion 07 cocycle subspace laws: PASS");
}

// ---------------------------------------------------------------------------
// criterion 8: the published automorphism families

struct Family {
    base: &'static str,
    /// three rational instances, each given as a row-major integer matrix
    instances: [[i64; 16]; 3],
    /// dimension 3 families pad with zeros
    dim: usize,
    /// parameter assignment text per instance (for parametric bases)
    params: [&'static str; 3],
}

fn family_catalog() -> Vec<Family> {
    // instances were produced by substituting rational values into the
    // published family formulas; is_automorphism re-verifies every one.
    let f = |base, dim, instances, params| Family {
        base,
        dim,
        instances,
        params,
    };
    let none = ["", "", ""];
    vec![
        // (x,0,0; y,x^2,0; z,2xy,x^3)
        f("N3s_02", 3, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 8, 0, 0, 0, 0, 0],
            [-1, 0, 0, 0, 3, 1, 0, 0, 1, -6, -1, 0, 0, 0, 0, 0],
            [3, 0, 0, 0, -2, 9, 0, 0, 5, -12, 27, 0, 0, 0, 0, 0],
        ], none),
        // (x,0,0; 0,x^2,0; z,0,x^4)
        f("N3s_04", 3, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 16, 0, 0, 0, 0, 0],
            [-1, 0, 0, 0, 0, 1, 0, 0, 4, 0, 1, 0, 0, 0, 0, 0],
            [3, 0, 0, 0, 0, 9, 0, 0, -5, 0, 81, 0, 0, 0, 0, 0],
        ], none),
        // (x,0,0,0; q,x^2,0,0; w,2xq,x^3,r; e,0,0,t)
        f("N4s_02", 4, [
            [2, 0, 0, 0, 1, 4, 0, 0, 0, 4, 8, 0, 0, 0, 0, 1],
            [-1, 0, 0, 0, 2, 1, 0, 0, 1, -4, -1, 2, 3, 0, 0, -2],
            [3, 0, 0, 0, 0, 9, 0, 0, 1, 0, 27, -1, -1, 0, 0, 2],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; y,0,x^4,r; z,0,0,t)
        f("N4s_04", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 16, 0, 0, 0, 0, 1],
            [-1, 0, 0, 0, 0, 1, 0, 0, 2, 0, 1, 3, 1, 0, 0, -1],
            [3, 0, 0, 0, 0, 9, 0, 0, -1, 0, 81, 1, 2, 0, 0, 5],
        ], none),
        // (x,0,0,0; y,x^2,0,0; z,2xy,x^3,0; t,y^2,x^2 y,x^4)
        f("N4s_08", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 8, 0, 0, 0, 0, 16],
            [-1, 0, 0, 0, 1, 1, 0, 0, 2, -2, -1, 0, 3, 1, 1, 1],
            [1, 0, 0, 0, -2, 1, 0, 0, 0, -4, 1, 0, 1, 4, -2, 1],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; 0,0,r,0; t,0,s,x^2 r)
        f("N4s_09", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 3, 0, 0, 0, 0, 12],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -2, 0, 1, 0, 3, -2],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 5, 0, -2, 0, -1, 5],
        ], none),
        // (x,0,0,0; y,x^2,-zr/x,0; z,0,r,0; t,z^2+2xy,s,x^3) with r^2=x^3
        f("N4s_10", 4, [
            [1, 0, 0, 0, 2, 1, -3, 0, 3, 0, 1, 0, 1, 13, 0, 1],
            [1, 0, 0, 0, 0, 1, 1, 0, 1, 0, -1, 0, 0, 1, 2, 1],
            [4, 0, 0, 0, 1, 16, 4, 0, -2, 0, 8, 0, 0, 12, 1, 64],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; z,0,x^3,0; t,2xz,s,x^4)
        f("N4s_11", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 8, 0, 0, 0, 0, 16],
            [-1, 0, 0, 0, 0, 1, 0, 0, 3, 0, -1, 0, 1, -6, 2, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, -2, 0, 1, 0, 0, -4, 1, 1],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; 0,0,±x^2,0; t,0,s,x^4)
        f("N4s_12", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 4, 0, 0, 0, 0, 16],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 2, 0, 3, 1],
            [3, 0, 0, 0, 0, 9, 0, 0, 0, 0, -9, 0, -1, 0, 1, 81],
        ], none),
        // (x,0,0,0; y,x^2,0,0; z,2xy,x^3,0; t,l y^2+2xz,(l+2)x^2 y,x^4)
        f("N4s_13", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 8, 0, 0, 0, 0, 16],
            [1, 0, 0, 0, 1, 1, 0, 0, 0, 2, 1, 0, 0, 3, 5, 1],
            [-1, 0, 0, 0, 2, 1, 0, 0, 1, -4, -1, 0, 0, 18, 14, 1],
        ], ["lambda=2,alpha=2", "lambda=3,alpha=2", "lambda=5,alpha=2"]),
        // (x,0,0,0; 0,q,0,0; 0,r,xq,0; t,s,xr,x^2 q)
        f("N4s_14", 4, [
            [2, 0, 0, 0, 0, 3, 0, 0, 0, 0, 6, 0, 0, 0, 0, 12],
            [-1, 0, 0, 0, 0, 2, 0, 0, 0, 1, -2, 0, 1, 0, -1, 2],
            [1, 0, 0, 0, 0, -1, 0, 0, 0, 2, -1, 0, -2, 3, 2, -1],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; 0,r,x^3,0; t,s,xr,x^4)
        f("N4s_15", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 8, 0, 0, 0, 0, 16],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 2, -1, 0, 1, 0, -2, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, -3, 1, 0, 2, 1, -3, 1],
        ], none),
        // phi1: (x,0,0,0; 0,x,0,0; 0,0,x^2,0; t,s,0,x^3)
        f("N4s_16", 4, [
            [2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 8],
            [-1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 2, 1, 0, -1],
            [3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 9, 0, -1, 2, 0, 27],
        ], none),
        // phi1: (x,0,0,0; 0,q,0,0; 0,0,xq,0; t,s,0,x^2 q^2)
        f("N4s_17", 4, [
            [2, 0, 0, 0, 0, 3, 0, 0, 0, 0, 6, 0, 0, 0, 0, 36],
            [-1, 0, 0, 0, 0, 2, 0, 0, 0, 0, -2, 0, 1, 1, 0, 4],
            [1, 0, 0, 0, 0, -2, 0, 0, 0, 0, -2, 0, -1, 2, 0, 4],
        ], none),
        // phi±: (x,0,0,0; 0,±1,0,0; 0,0,±x,0; t,s,0,x^2)
        f("N4s_18", 4, [
            [2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 4],
            [-3, 0, 0, 0, 0, -1, 0, 0, 0, 0, 3, 0, 1, 2, 0, 9],
            [1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, -2, 1, 0, 1],
        ], none),
        // phi1: (x,0,0,0; 0,q,0,0; 0,0,xq,0; t,s,0,1) with x^2=q^2=1
        f("N4s_19", 4, [
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 2, -1, 0, 1],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 3, 0, 1],
            [1, 0, 0, 0, 0, -1, 0, 0, 0, 0, -1, 0, 1, 1, 0, 1],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; z,0,x^3,0; t,0,x^2 z,x^5)
        f("N4_01", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 8, 0, 0, 0, 0, 32],
            [-1, 0, 0, 0, 0, 1, 0, 0, 2, 0, -1, 0, 1, 0, 2, -1],
            [1, 0, 0, 0, 0, 1, 0, 0, -3, 0, 1, 0, 2, 0, -3, 1],
        ], none),
        // (1,0,0,0; 0,1,0,0; z,0,1,0; t,2z,z,1)
        f("N4_02", 4, [
            [1, 0, 0, 0, 0, 1, 0, 0, 2, 0, 1, 0, 3, 4, 2, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, -1, 0, 1, 0, 0, -2, -1, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, 5, 0, 1, 0, -2, 10, 5, 1],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; 0,0,x^3,0; t,0,0,x^6)
        f("N4_03", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 8, 0, 0, 0, 0, 64],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 3, 0, 0, 1],
            [3, 0, 0, 0, 0, 9, 0, 0, 0, 0, 27, 0, -2, 0, 0, 729],
        ], none),
        // phi±: (±1,0,0,0; 0,1,0,0; 0,0,±1,0; t,0,0,1)
        f("N4_04", 4, [
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 2, 0, 0, 1],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 1, 0, 0, 1],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, -3, 0, 0, 1],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; z,0,x^4,0; t,2xz,0,x^5)
        f("N4_05", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 16, 0, 0, 0, 0, 32],
            [-1, 0, 0, 0, 0, 1, 0, 0, 2, 0, 1, 0, 1, -4, 0, -1],
            [1, 0, 0, 0, 0, 1, 0, 0, -1, 0, 1, 0, 3, -2, 0, 1],
        ], none),
        // phi±: (±1,0,0,0; 0,1,0,0; z,0,1,0; t,±2z,0,±1)
        f("N4_06", 4, [
            [1, 0, 0, 0, 0, 1, 0, 0, 2, 0, 1, 0, 1, 4, 0, 1],
            [-1, 0, 0, 0, 0, 1, 0, 0, 3, 0, 1, 0, 0, -6, 0, -1],
            [-1, 0, 0, 0, 0, 1, 0, 0, -1, 0, 1, 0, 2, 2, 0, -1],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; 0,0,x^4,0; t,0,0,x^6)
        f("N4_07", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 16, 0, 0, 0, 0, 64],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 2, 0, 0, 1],
            [3, 0, 0, 0, 0, 9, 0, 0, 0, 0, 81, 0, -1, 0, 0, 729],
        ], none),
        // (1,0,0,0; 0,1,0,0; 0,0,1,0; t,0,0,1)
        f("N4_08", 4, [
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 4, 0, 0, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, -2, 0, 0, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 7, 0, 0, 1],
        ], none),
        // (x,0,0,0; 0,x^2,0,0; 0,0,x^4,0; t,0,0,x^8)
        f("N4_09", 4, [
            [2, 0, 0, 0, 0, 4, 0, 0, 0, 0, 16, 0, 0, 0, 0, 256],
            [-1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1],
            [3, 0, 0, 0, 0, 9, 0, 0, 0, 0, 81, 0, -2, 0, 0, 6561],
        ], none),
        // eta-power family at k=0: (1,0,0,0; 0,1,0,0; 0,0,1,0; t,0,0,1)
        f("N4_10", 4, [
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 3, 0, 0, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, -1, 0, 0, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 5, 0, 0, 1],
        ], none),
        // (1,0,0,0; 0,1,0,0; 0,0,1,0; t,0,0,1)
        f("N4_11", 4, [
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 2, 0, 0, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, -4, 0, 0, 1],
            [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1],
        ], ["lambda=2", "lambda=3", "lambda=5"]),
    ]
}

#[test]
fn criterion_08_automorphism_stability() {
    let mut entries = load("dim3.alg");
    entries.extend(load("dim4.alg"));
    let mut instances = 0;
    for fam in family_catalog() {
        let p = entry(&entries, fam.base);
        let table = p.to_table().unwrap();
        for (inst, ptext) in fam.instances.iter().zip(fam.params.iter()) {
            let spec = if ptext.is_empty() {
                table.specialize(&sample_assignments(p).unwrap()[0]).unwrap()
            } else {
                let asg = nilext::tabledsl::parse_assignment(&p.ring, ptext).unwrap();
                table.specialize(&asg).unwrap()
            };
            let n = fam.dim;
            let ring = spec.ring();
            let mut rows = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    rows.push(Poly::from_integer(ring, inst[i * 4 + j]));
                }
            }
            let m = Matrix::new(ring, n, n, rows);
            let phi = AutMap::verify(&spec, m).unwrap_or_else(|e| {
                panic!("{}: instance rejected: {e:?}", fam.base)
            });
            let b2 = coboundary_space(&spec).unwrap();
            assert_eq!(
                phi.act_on_form_space(&b2).unwrap(),
                b2,
                "{}: B2 not stable",
                fam.base
            );
            let z2d = cd_cocycle_space(&spec).unwrap();
            assert_eq!(
                phi.act_on_form_space(&z2d).unwrap(),
                z2d,
                "{}: Z2_D not stable",
                fam.base
            );
            instances += 1;
        }
    }
    assert_eq!(instances, 27 * 3);
    println!("criterion 08 automorphism stability ({instances} instances): PASS");
}

#[test]
fn criterion_09_witness_checks() {
    let mut entries = load("dim3.alg");
    entries.extend(load("dim4.alg"));

    // the sign-flip witness on N3s_02 is present literally
    let n3s02 = entry(&entries, "N3s_02");
    let has_flip = n3s02.expect.witnesses.iter().any(|w| match w {
        WitnessAnnotation::Map { matrix, .. } => {
            let diag: Vec<String> = (0..3).map(|i| format!("{}", matrix[i][i])).collect();
            diag == ["-1", "1", "-1"]
        }
        _ => false,
    });
    assert!(has_flip, "diag(-1,1,-1) witness must ship");

    // every boxed base algebra carries at least one verified witness; the
    // unverifiable records are reported as such and never as failures
    let boxed = [
        "N3s_02", "N3s_04", "N4s_02", "N4s_04", "N4s_08", "N4s_09", "N4s_10", "N4s_11",
        "N4s_12", "N4s_13", "N4s_14", "N4s_15", "N4s_16", "N4s_17", "N4s_18", "N4s_19",
    ];
    for name in boxed {
        let p = entry(&entries, name);
        assert!(
            p.expect
                .witnesses
                .iter()
                .any(|w| matches!(w, WitnessAnnotation::Map { .. })),
            "{name}: no witness shipped"
        );
        let report = verify_entry(p);
        let mut verified = 0;
        for c in report.checks.iter().filter(|c| c.kind.starts_with("witness")) {
            assert!(c.pass, "{name} {}: {}", c.kind, c.detail);
            if c.detail.contains("classes agree") {
                verified += 1;
            } else {
                assert!(
                    c.detail.contains("unverifiable"),
                    "{name}: witness neither verified nor unverifiable: {}",
                    c.detail
                );
            }
        }
        assert!(verified >= 1, "{name}: no witness verified");
    }
    println!("criterion 09 witness checks: PASS");
}

#[test]
fn criterion_10_parser_round_trip_and_negative_control() {
    let mut total = 0;
    for file in ["dim3.alg", "dim4.alg", "dim5.alg"] {
        for p in load(file) {
            let round = parse(&serialize(&p))
                .unwrap_or_else(|e| panic!("{}: round trip parse failed: {e}", p.name));
            assert_eq!(p, round, "{}: round trip changed the AST", p.name);
            total += 1;
        }
    }
    assert_eq!(total, 4 + 30 + 405);

    // negative control: corrupt one structure constant of a CD entry and keep
    // its expectations; verification must fail.
    let corrupted = parse(concat!(
        "algebra Corrupted dim 4\n",
        "e1*e1 = e2\n",
        "e1*e2 = e3\n",
        "e2*e2 = e4\n",
        "e2*e3 = e4\n", // flipped-in extra product
        "expect\n",
        "  cd true\n",
        "  h2c 7\n",
        "  h2d 2\n",
        "end\n"
    ))
    .unwrap();
    let report = verify_entry(&corrupted);
    assert!(
        !report.passed(),
        "corrupted entry must fail verification: {report:?}"
    );
    let cd = report.checks.iter().find(|c| c.kind == "cd").unwrap();
    assert!(!cd.pass, "corruption must flip the CD check");
    println!("criterion 10 parser round trip + negative control: PASS");
}

#[test]
fn shipped_catalogs_verify_clean() {
    // end-to-end: the whole shipped catalog passes the pipeline
    for file in ["dim3.alg", "dim4.alg"] {
        let entries = load(file);
        let report = verify_catalog(&entries);
        assert_eq!(report.failures, 0, "{file}: {report:?}");
    }
    // dim5 is covered check-by-check in criteria 3, 5, 7, 10; running the
    // full pipeline once more here keeps the CLI behaviour pinned.
    let entries = load("dim5.alg");
    let report = verify_catalog(&entries);
    assert_eq!(report.failures, 0);
    assert_eq!(report.entries.len(), 405);
    println!("shipped catalogs verify clean: PASS");
}

#[test]
fn catalog_names_and_counts() {
    let entries = load_all();
    assert_eq!(entries.len(), 439);
    let mut names = BTreeMap::new();
    for p in &entries {
        assert!(names.insert(p.name.clone(), ()).is_none(), "{}", p.name);
    }
    // the label anomaly ships both printed tables under distinct names
    assert!(names.contains_key("N_191"));
    assert!(names.contains_key("N_191x"));
    // family members printed at excluded parameter values
    for special in ["N_76(-1)", "N_76(0)", "N_80(0)", "N_168(4)", "N_170(lambda,0)", "N_184(lambda,0)"] {
        assert!(names.contains_key(special), "{special} missing");
    }
    println!("catalog names and counts: PASS");
}

#[test]
fn extension_cd_criterion_matches_class_membership() {
    // For a CD base algebra, the central extension by theta stays CD exactly
    // when theta lies in the CD-cocycle subspace.
    let mut entries = load("dim3.alg");
    entries.extend(load("dim4.alg"));
    let mut rng = StdRng::seed_from_u64(0xd1ca7e);
    let mut agreements = 0;
    for p in entries.iter().filter(|p| p.name.contains('s')) {
        let table = p.to_table().unwrap();
        let spec = table
            .specialize(&sample_assignments(p).unwrap()[0])
            .unwrap();
        let n = spec.dim();
        let ring = spec.ring();
        let z2d = cd_cocycle_space(&spec).unwrap();
        for _ in 0..10 {
            let coords: Vec<Poly> = (0..pair_count(n))
                .map(|_| Poly::from_integer(ring, rng.gen_range(-2..=2)))
                .collect();
            let scalars: Vec<Scalar> = coords.iter().map(|q| q.as_constant().unwrap()).collect();
            let theta = SymCocycle::from_components(ring, n, vec![coords]).unwrap();
            let ext = central_extend(&spec, std::slice::from_ref(&theta)).unwrap();
            let ext_cd = ext.check_identity(IdentityKind::Cd).unwrap().holds;
            assert_eq!(
                ext_cd,
                z2d.contains_vector(&scalars),
                "{}: extension CD status disagrees with Z2_D membership",
                p.name
            );
            agreements += 1;
        }
    }
    assert_eq!(agreements, 23 * 10);
    println!("extension CD criterion <-> class membership: PASS");
}
