use std::fs::File;
use std::io::BufReader;

use magicstar_core::lattice::read_tsv;
use magicstar_core::star::{self, Axes};
use magicstar_core::{AlgebraId, Family, MagicStarAlgebra, RootSystem, StructureConstants};

fn id(f: Family, n: u32) -> AlgebraId {
    AlgebraId::new(f, n).unwrap()
}

#[test]
fn root_tsv_round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    for f in Family::ALL {
        let sys = RootSystem::generate(id(f, 2)).unwrap();
        let path = dir.path().join(format!("{f}.tsv"));
        sys.write_tsv(File::create(&path).unwrap()).unwrap();
        let table = read_tsv(BufReader::new(File::open(&path).unwrap())).unwrap();
        assert_eq!((table.family, table.level), (f, 2));
        assert_eq!(table.roots, sys.roots());
    }
}

#[test]
fn structure_constants_round_trip_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e7.txt");
    let alg = MagicStarAlgebra::new(id(Family::E7, 2)).unwrap();
    let sc = alg.structure_constants();
    sc.write(File::create(&path).unwrap()).unwrap();
    let back = StructureConstants::read(BufReader::new(File::open(&path).unwrap())).unwrap();
    assert_eq!(back.to_text(), sc.to_text());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), sc.to_text());
}

#[test]
fn svg_file_matches_the_string_form() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("star.svg");
    let sys = RootSystem::generate(id(Family::E8, 1)).unwrap();
    let cells = star::project_axes(&sys, Axes::K123).unwrap();
    star::emit_star_svg("e8", &cells, File::create(&path).unwrap()).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), star::star_svg("e8", &cells));
}

#[test]
fn nested_star_at_level_three_matches_closed_forms() {
    let sys = RootSystem::generate(id(Family::E8, 3)).unwrap();
    let cells = star::project_nested(&sys).unwrap();
    // e6 sub-star at N = 16
    assert_eq!((cells[&(0, 0)].orth, cells[&(0, 0)].spin), (2 * 10 * 9, 1 << 11));
    assert_eq!((cells[&(1, 1)].orth, cells[&(1, 1)].spin), (21, 1 << 10));
}
