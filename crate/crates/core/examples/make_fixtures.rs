//! Regenerates the `fixtures/` directory at the workspace root.

use std::fs;
use std::path::Path;

use tanglecolor::braid::{parse_braid, BraidWord, NamedBraid};
use tanglecolor::catalog::{alternating, special_linear_2};
use tanglecolor::extension::{covering_p_lambda, find_galex_automorphism, galex};
use tanglecolor::format::{Document, Record};
use tanglecolor::group::{fix_subgroup, FiniteGroup, GroupAutomorphism};
use tanglecolor::perm::Perm;
use tanglecolor::quandle::Quandle;

fn galex_doc(gname: &str, group: &FiniteGroup, fname: &str, f: &GroupAutomorphism, qname: &str) -> Document {
    Document {
        records: vec![
            Record::Group { name: gname.into(), group: group.clone() },
            Record::Auto { name: fname.into(), group: gname.into(), automorphism: f.clone() },
            Record::Galex { name: qname.into(), group: gname.into(), auto: fname.into(), quandle: galex(group, f) },
        ],
    }
}

fn write(root: &Path, rel: &str, header: &str, doc: &Document) {
    let path = root.join(rel);
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    fs::write(&path, format!("{header}{doc}")).unwrap();
    println!("wrote {}", path.display());
}

fn knot(name: &str, n: usize, w: &[i32]) -> Record {
    Record::Knot(NamedBraid { name: name.into(), braid: BraidWord::new(n, w.to_vec()).unwrap() })
}

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");

    let r3 = Document { records: vec![Record::Quandle { name: "r3".into(), quandle: Quandle::dihedral(3) }] };
    write(&root, "r3.qnd", "# dihedral quandle R3\n", &r3);

    let sl23 = special_linear_2(3);
    let f = find_galex_automorphism(&sl23, 4).unwrap().expect("SL(2,3) has a connected |Fix| = 4 class");
    write(
        &root,
        "sl23ext.qnd",
        "# GAlex(SL(2,3), f) with |Fix(f)| = 4, order 24\n",
        &galex_doc("sl23", &sl23, "f", &f, "sl23ext"),
    );
    let mut grp = galex_doc("sl23", &sl23, "f", &f, "unused");
    grp.records.pop();
    write(&root, "groups/sl23.grp", "# SL(2,3) and an automorphism with |Fix| = 4\n", &grp);

    let z5 = FiniteGroup::cyclic(5);
    let double = GroupAutomorphism::from_fn(&z5, |x| 2 * x % 5).unwrap();
    write(&root, "extra/z5x2.qnd", "# GAlex(Z5, x2)\n", &galex_doc("z5", &z5, "x2", &double, "z5x2"));

    let a5 = alternating(5);
    let t = Perm::from_cycles(5, &[&[1, 2]]).unwrap();
    let conj = a5.conjugation_automorphism(&t).unwrap();
    write(
        &root,
        "extra/a5ext.qnd",
        "# GAlex(A5, conjugation by (1 2)), order 60\n",
        &galex_doc("a5", &a5.group, "conj12", &conj, "a5ext"),
    );

    let perms = Document {
        records: vec![
            Record::PermGroup {
                name: "a5".into(),
                degree: 5,
                generators: vec![
                    Perm::from_cycles(5, &[&[1, 2, 3]]).unwrap(),
                    Perm::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap(),
                ],
            },
            Record::PermGroup {
                name: "s5".into(),
                degree: 5,
                generators: vec![t.clone(), Perm::from_cycles(5, &[&[1, 2, 3, 4, 5]]).unwrap()],
            },
        ],
    };
    write(&root, "groups/a5s5.perm", "# A5 and S5 on five points\n", &perms);

    let fix = fix_subgroup(&sl23, &f);
    let cov = covering_p_lambda(&sl23, &f, &fix).unwrap();
    let phi = cov.extract_cocycle().unwrap();
    let coc = Document {
        records: vec![
            Record::Quandle { name: "h".into(), quandle: cov.homogeneous.quandle.clone() },
            Record::Group { name: "fix".into(), group: phi.coefficients().clone() },
            Record::Cocycle { name: "phi".into(), quandle: "h".into(), group: "fix".into(), cocycle: phi },
        ],
    };
    write(
        &root,
        "cocycles/sl23_fix.coc",
        "# cocycle of GAlex(SL(2,3), f) over the Fix-coset quandle; section labels are SL(2,3) elements\n",
        &coc,
    );

    let knots = Document { records: vec![knot("3_1", 2, &[1, 1, 1]), knot("4_1", 3, &[1, -2, 1, -2])] };
    write(&root, "knots.txt", "# braid words: knot <name> <strands> <letters> <word>\n", &knots);

    let trefoil = BraidWord::new(2, vec![1, 1, 1]).unwrap();
    let more = Document {
        records: vec![
            knot("3_1", 2, &[1, 1, 1]),
            knot("4_1", 3, &[1, -2, 1, -2]),
            knot("5_1", 2, &[1, 1, 1, 1, 1]),
            knot("5_2", 3, &[1, 1, 1, 2, -1, 2]),
            knot("6_1", 4, &[1, 1, 2, -1, -3, 2, -3]),
            Record::Knot(NamedBraid { name: "3_1+3_1".into(), braid: trefoil.connected_sum(&trefoil) }),
            knot("w12", 5, &[1, -2, 3, -4, 1, -2, 3, -4, 1, -2, 3, -4]),
        ],
    };
    write(&root, "knots_more.txt", "# w12 is a 12-letter 5-strand test braid\n", &more);

    assert!(parse_braid("knot 3_1 2 3 1 1 1").is_ok());
}
