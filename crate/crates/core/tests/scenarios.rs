use approx::assert_abs_diff_eq;
use discord_core::correlations::discord;
use discord_core::entropy::correlation_bits;
use discord_core::kernel::crossing_times;
use discord_core::scenarios::kink::detect_kinks_series;
use discord_core::scenarios::{
    characteristic_time, detect_kink, figure_data, make_family_state, trajectory, Branch, ChannelPair, InitialFamily,
    Panel,
};
use discord_core::{BellCoefficients, Decay, KernelParams, TimeGrid};

fn symmetric() -> Decay {
    Decay::Kernel(KernelParams::symmetric(1.0).unwrap())
}

#[test]
fn family_examples() {
    let cases = [
        (
            InitialFamily::Synchronized {
                x: 0.6,
                branch: Branch::Upper,
            },
            [0.6, 0.36, -0.6],
        ),
        (
            InitialFamily::Proportional {
                x: 0.6,
                branch: Branch::Upper,
            },
            [0.6, 0.6, -1.0],
        ),
        (
            InitialFamily::SuddenChange {
                c_x: 0.1,
                c_y: 0.16,
                branch: Branch::Upper,
            },
            [0.1, 0.16, 0.1],
        ),
    ];
    for (family, want) in cases {
        let got = make_family_state(family).unwrap().to_array();
        for (g, w) in got.iter().zip(want) {
            assert_abs_diff_eq!(*g, w, epsilon = 1e-15);
        }
    }
    assert!(make_family_state(InitialFamily::Synchronized {
        x: 1.2,
        branch: Branch::Upper
    })
    .is_err());
    // c_z = c_x = 0.5 with c_y = 0.9 has a negative Bell weight
    assert!(make_family_state(InitialFamily::SuddenChange {
        c_x: 0.5,
        c_y: 0.9,
        branch: Branch::Upper
    })
    .is_err());
}

#[test]
fn trajectory_starts_at_initial_report() {
    let c0 = BellCoefficients::new(0.3, -0.2, 0.4);
    let traj = trajectory(
        c0,
        &symmetric(),
        ChannelPair::default(),
        &TimeGrid::new(5.0, 100).unwrap(),
    )
    .unwrap();
    assert_eq!(traj.points[0].report, discord(c0).unwrap());
    assert_eq!(traj.points[0].markov_report, discord(c0).unwrap());
    assert!(traj.points.iter().all(|pt| pt.coefficients.is_physical()));
}

#[test]
fn sudden_change_switches_branch_at_tc() {
    let c0 = BellCoefficients::new(0.1, 0.16, 0.1);
    let decay = symmetric();
    let t_c = characteristic_time(c0, &decay).unwrap().unwrap();
    let traj = trajectory(c0, &decay, ChannelPair::default(), &TimeGrid::new(10.0, 2000).unwrap()).unwrap();
    for pt in &traj.points {
        let y_branch = correlation_bits(pt.p * pt.p * c0.y);
        let x_branch = correlation_bits(pt.p * c0.x);
        let want = if pt.t < t_c { y_branch } else { x_branch };
        assert_abs_diff_eq!(pt.report.classical, want, epsilon = 1e-12);
    }
    let p = decay.p(t_c);
    assert_abs_diff_eq!(
        correlation_bits(p * p * c0.y),
        correlation_bits(p * c0.x),
        epsilon = 1e-9
    );
}

#[test]
fn synchronized_family_has_no_kink() {
    for panel in [Panel::A, Panel::B] {
        let table = figure_data(1, panel).unwrap();
        let t = table.column("a_t").unwrap();
        assert_eq!(detect_kinks_series(&t, &table.column("C").unwrap()), Vec::<f64>::new());
    }
}

#[test]
fn oscillatory_kernel_gives_repeated_kinks() {
    let c0 = BellCoefficients::new(0.1, 0.5, 0.1);
    let decay = Decay::Kernel(KernelParams::strong_memory(1.0).unwrap());
    let grid = TimeGrid::new(3.0, 6000).unwrap();
    let traj = trajectory(c0, &decay, ChannelPair::default(), &grid).unwrap();
    let crossings = crossing_times(&decay, 0.2, 3.0, 64);
    let kinks = detect_kinks_series(&traj.times(), &traj.classical());
    assert!(crossings.len() >= 3, "{crossings:?}");
    assert!(kinks.len() >= 3, "{kinks:?}");
    // every kink sits on a crossing of |p| = |c_x| / |c_y|
    for k in &kinks {
        let nearest = crossings.iter().map(|c| (c - k).abs()).fold(f64::INFINITY, f64::min);
        assert!(nearest <= grid.step(), "kink {k} is {nearest} from a crossing");
    }
    assert_eq!(detect_kink(&traj), kinks.first().copied());
    let t_c = characteristic_time(c0, &decay).unwrap().unwrap();
    assert_eq!(t_c, crossings[0]);
}

#[test]
fn proportional_family_keeps_classical_above_discord() {
    for panel in [Panel::A, Panel::B] {
        let table = figure_data(2, panel).unwrap();
        let c = table.column("C").unwrap();
        let d = table.column("D").unwrap();
        assert!(c.iter().zip(&d).all(|(c, d)| c >= d));
    }
}

#[test]
fn strong_memory_oscillates() {
    let table = figure_data(1, Panel::B).unwrap();
    let p = table.column("p").unwrap();
    let zeros = p.windows(2).filter(|w| w[0].signum() != w[1].signum()).count();
    // omega0 ~ 4.36 a over a t in [0, 3]
    assert!((4..=5).contains(&zeros), "{zeros}");
    let markov = table.column("C_markov").unwrap();
    assert!(markov.windows(2).all(|w| w[1] <= w[0]));
}
