# thresholds.py

# 적분 기본값
integrator_defaults = {
    'dt': 3e-3,
    'extinction_threshold': 1e-7,
    'convergence_tol': 1e-4,
    'convergence_window': 100,
    'sample_stride': 100,
    'divergence_cap': 1e6,
    'base_horizon': 10_000.0,
    'max_samples': 500_000,
}

# 민감도 실험용 멸종 임계값
low_extinction_threshold = 1e-70

# 초기 상태
initial_state = {
    'n0': 1.0,
    'm0': 1.0,
}

# 진동 판정기
detector_defaults = {
    'amplitude_tol': 1e-3,
    'window_fraction': 0.2,
    'decay_ratio': 0.5,
    'min_maxima': 3,
}

# 뉴턴 / 야코비안
solver_defaults = {
    'tol': 1e-12,
    'max_iter': 200,
    'max_halvings': 30,
    'fd_step': 1e-7,
    'jacobian_step': 1e-6,
    'equilibrium_tol': 1e-8,
}

# (β, ω) 격자: [-80, 0[ 선형 27개, [1e-3, 1e2[ 로그 17개
beta_domain = (-80.0, 0.0)
beta_domain_flipped = (0.0, 80.0)
omega_domain = (1e-3, 1e2)
beta_count = 27
omega_count = 17

# 존재표 탐침: 구별 쌍 α 집합, 나머지 쌍 α
probe_alphas = (0.5, 1.5, 2.0, 3.0)
probe_other_alphas = (0.6, 0.8, 2.0)

# 공개된 진동 존재표 (topology, hoi_kind, distinguished_pair) -> 진동 여부
published_existence = {
    ('transitive-a', 'sym', 'AB'): False,
    ('transitive-a', 'sym', 'AC'): False,
    ('transitive-a', 'sym', 'BC'): False,
    ('transitive-a', 'asym-ab', 'AB'): False,
    ('transitive-a', 'asym-ab', 'AC'): False,
    ('transitive-a', 'asym-ab', 'BC'): False,
    ('transitive-a', 'asym-ba', 'AB'): False,
    ('transitive-a', 'asym-ba', 'AC'): False,
    ('transitive-a', 'asym-ba', 'BC'): False,

    ('transitive-b', 'sym', 'AB'): False,
    ('transitive-b', 'sym', 'AC'): False,
    ('transitive-b', 'sym', 'BC'): False,
    ('transitive-b', 'asym-ab', 'AB'): False,
    ('transitive-b', 'asym-ab', 'AC'): True,
    ('transitive-b', 'asym-ab', 'BC'): False,
    ('transitive-b', 'asym-ba', 'AB'): False,
    ('transitive-b', 'asym-ba', 'AC'): False,
    ('transitive-b', 'asym-ba', 'BC'): False,

    ('transitive-c', 'sym', 'AB'): True,
    ('transitive-c', 'sym', 'AC'): True,
    ('transitive-c', 'sym', 'BC'): False,
    ('transitive-c', 'asym-ab', 'AB'): False,
    ('transitive-c', 'asym-ab', 'AC'): True,
    ('transitive-c', 'asym-ab', 'BC'): False,
    ('transitive-c', 'asym-ba', 'AB'): False,
    ('transitive-c', 'asym-ba', 'AC'): False,
    ('transitive-c', 'asym-ba', 'BC'): False,

    ('intransitive', 'sym', 'AB'): True,
    ('intransitive', 'sym', 'AC'): True,
    ('intransitive', 'sym', 'BC'): True,
    ('intransitive', 'asym-ab', 'AB'): True,
    ('intransitive', 'asym-ab', 'AC'): True,
    ('intransitive', 'asym-ab', 'BC'): True,
    ('intransitive', 'asym-ba', 'AB'): True,
    ('intransitive', 'asym-ba', 'AC'): True,
    ('intransitive', 'asym-ba', 'BC'): True,
}
