//! Regenerates the bundled fixture corpus. Run explicitly with
//! `cargo test -p azumaya-cli --test regen_fixtures -- --ignored`
//! after changing the schema or the underlying constructions.

use std::fs;
use std::path::Path;

use azumaya::cech::quaternion_tetrahedron;
use azumaya::invariants::{generator_loop, realize_cup_cocycle, ClutchingLoop};
use azumaya::matalg::Unitary;
use azumaya::simplicial::{cohomology, datasets, Cochain, Ring};
use azumaya::ToleranceConfig;
use azumaya_cli::dataset::{
    envelope, serialize, ComplexPayload, GroupoidPayload, LoopPayload, NatTransPayload, Payload,
    PuCocyclePayload,
};

fn write(name: &str, body: Payload) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    fs::write(&path, serialize(&envelope(body))).unwrap();
}

#[test]
#[ignore = "rewrites the bundled corpus in-place"]
fn regenerate_bundled_fixtures() {
    let cfg = ToleranceConfig::default();

    let s2 = datasets::tetrahedron_boundary();
    let t2 = datasets::torus_seven();
    let rp2 = datasets::rp2_six();
    let rp2xs1 = datasets::rp2_x_s1();
    write("s2.json", Payload::Complex(ComplexPayload::from_complex(&s2)));
    write("t2.json", Payload::Complex(ComplexPayload::from_complex(&t2)));
    write("rp2.json", Payload::Complex(ComplexPayload::from_complex(&rp2)));
    write(
        "rp2xs1.json",
        Payload::Complex(ComplexPayload::from_complex(&rp2xs1)),
    );

    // cup-product cocycle on the torus: pairing of the two H^1 generators
    let h1 = cohomology(&t2, 1, Ring::ModK(2));
    let cup_t2 =
        realize_cup_cocycle(h1.representative(0), h1.representative(1), &t2, 2).unwrap();
    write(
        "cup_t2_k2.json",
        Payload::PuCocycle(PuCocyclePayload::from_cocycle(&cup_t2)),
    );

    // cup-product cocycle on RP^2 x S^1 from the pulled-back factor classes
    let s1 = datasets::circle(3);
    let to_rp2: Vec<usize> = (0..rp2xs1.vertex_count()).map(|v| v / 3).collect();
    let to_s1: Vec<usize> = (0..rp2xs1.vertex_count()).map(|v| v % 3).collect();
    let ga = cohomology(&rp2, 1, Ring::ModK(2));
    let a = azumaya::simplicial::pullback(&rp2xs1, &rp2, &to_rp2, ga.representative(0)).unwrap();
    let mut bvals = vec![0i64; s1.count(1)];
    bvals[s1.index_of(1, &[0, 2]).unwrap()] = 1;
    let bgen = Cochain::new(&s1, 1, Ring::ModK(2), bvals).unwrap();
    let b = azumaya::simplicial::pullback(&rp2xs1, &s1, &to_s1, &bgen).unwrap();
    let cup_rp2xs1 = realize_cup_cocycle(&a, &b, &rp2xs1, 2).unwrap();
    write(
        "cup_rp2xs1_k2.json",
        Payload::PuCocycle(PuCocyclePayload::from_cocycle(&cup_rp2xs1)),
    );

    write(
        "quaternion_s2.json",
        Payload::PuCocycle(PuCocyclePayload::from_cocycle(&quaternion_tetrahedron())),
    );

    // the quaternion cocycle induced to a groupoid cocycle at the
    // standard basepoint M_2 → M_4, and the witness of flattening it back
    let basepoint = azumaya::matalg::StarHom::standard(2, 2);
    let induced =
        azumaya::cech::induce_groupoid_cocycle(&quaternion_tetrahedron(), &basepoint, &cfg)
            .unwrap();
    write(
        "induced_quaternion_s2.json",
        Payload::GroupoidCocycle(GroupoidPayload::from_cocycle(&induced)),
    );
    let (_, witness) = azumaya::cech::skeletonize(&induced, &cfg).unwrap();
    write(
        "witness_quaternion_s2.json",
        Payload::NatTrans(NatTransPayload::from_nat(&witness)),
    );

    let gen = generator_loop(2, 64, &cfg).unwrap();
    write("generator_loop_k2.json", Payload::Loop(LoopPayload::from_loop(&gen)));

    let constant = ClutchingLoop::unitary(vec![Unitary::identity(2); 8], &cfg).unwrap();
    write(
        "constant_loop_k2.json",
        Payload::Loop(LoopPayload::from_loop(&constant)),
    );
}
