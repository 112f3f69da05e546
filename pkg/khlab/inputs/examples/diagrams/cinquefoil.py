# (2,5) torus knot with negative crossings
diagram = "PD[X(1,6,2,7),X(3,8,4,9),X(5,10,6,1),X(7,2,8,3),X(9,4,10,5)]"
