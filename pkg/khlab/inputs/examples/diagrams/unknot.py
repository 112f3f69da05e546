diagram = "U"
