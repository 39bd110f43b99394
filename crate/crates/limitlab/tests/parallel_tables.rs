use limitlab::parallel;
use limitlab_core::complexity;
use limitlab_core::toyvm;
use limitlab_core::Caps;

#[test]
fn parallel_table_equals_sequential() {
    let caps = Caps::default();
    let sequential = toyvm::min_description_table(16, &caps).unwrap();
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let parallel = pool
            .install(|| parallel::min_description_table(16, &caps))
            .unwrap();
        assert_eq!(parallel, sequential, "{threads} threads");
    }
}

#[test]
fn parallel_census_equals_sequential() {
    let caps = Caps::default();
    for n in [0, 3, 8, 12] {
        assert_eq!(
            parallel::compression_census(n, 14, &caps).unwrap(),
            complexity::compression_census(n, 14, &caps).unwrap()
        );
    }
}

#[test]
fn parallel_build_respects_caps() {
    let tight = Caps {
        max_prog_len: 10,
        ..Caps::default()
    };
    assert!(parallel::min_description_table(11, &tight).is_err());
}
