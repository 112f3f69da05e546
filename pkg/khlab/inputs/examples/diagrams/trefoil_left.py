# Left-handed trefoil, three negative crossings
diagram = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
