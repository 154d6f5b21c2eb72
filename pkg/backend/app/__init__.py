# HOI modifier dynamics
