# ASV benchmarks package
