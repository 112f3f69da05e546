# Right-handed trefoil, three positive crossings
diagram = "PD[X(1,5,2,4),X(3,1,4,6),X(5,3,6,2)]"
