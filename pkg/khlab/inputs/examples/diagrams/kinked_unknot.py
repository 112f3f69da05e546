# Unknot drawn with one positive kink
diagram = "PD[X(1,1,2,2)]"
