# res(T) = {a} for every T: a global fixed-point attractor.
background: a b
. / . -> a
