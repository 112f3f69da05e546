# Unknot drawn with two positive kinks
diagram = "PD[X(1,2,3,3),X(2,1,4,4)]"
