package com.demo.broken;

public class Helper {
    private String note;
}
