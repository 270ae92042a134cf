package fixtures;

public class Beta {
    static int sumRange(int lo, int hi) {
        int acc = 0;
        for (int k = lo; k <= hi; k++) {
            acc = acc + k;
        }
        return acc;
    }

    static int sumRangeShifted(int lo, int hi) {
        int acc = 0;
        int extra = 1 + 1;
        for (int k = lo; k <= hi; k++) {
            acc = acc + k;
        }
        return acc + extra;
    }
}
