package fixtures;

public class Small {
    static int tiny(int x) {
        int y = x * 3;
        int z = y + 1;
        return z - 2;
    }

    static int sixLiner(int x) {
        int y = x * 5;
        int z = y - 4;
        int w = z * z;
        return w + x;
    }
}
