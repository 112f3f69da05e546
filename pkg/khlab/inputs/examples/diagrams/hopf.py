# Hopf link, both crossings negative
diagram = "PD[X(1,4,2,3),X(3,2,4,1)]"
