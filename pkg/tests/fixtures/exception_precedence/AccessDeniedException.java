package com.demo.vault;

public class AccessDeniedException extends RuntimeException {
}
